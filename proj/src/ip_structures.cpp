#include "pr/ip_structures.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

namespace pr {

namespace {

void validate_generators(const GeneratorSequence& G) {
    const auto& g = G.generators;
    if (!g.empty() && g.front() < 1)
        throw std::invalid_argument("generator sequence: generators must be positive");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] <= g[i - 1])
            throw std::invalid_argument("generator sequence: strict monotonicity violated");
}

void validate_k(const GeneratorSequence& G, std::size_t k) {
    if (k < 1 || k > G.generators.size())
        throw std::invalid_argument("k must satisfy 1 <= k <= |G|");
    if (k > 20) throw std::length_error("k > 20: 2^k subset enumeration refused");
}

template <typename Combine>
std::vector<Int> nonempty_subset_values(const GeneratorSequence& G, std::size_t k,
                                        Combine&& combine) {
    validate_generators(G);
    validate_k(G, k);
    std::set<Int> values;
    for (std::size_t i = 0; i < k; ++i) {
        std::set<Int> extended;
        for (const Int& v : values) extended.insert(combine(v, G.generators[i]));
        values.insert(extended.begin(), extended.end());
        values.insert(G.generators[i]);
    }
    return {values.begin(), values.end()};
}

void validate_subset(const std::vector<std::int64_t>& A, std::int64_t N, const char* op) {
    if (N < 1) throw std::invalid_argument(std::string(op) + ": N must be >= 1");
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i] < 1 || A[i] > N)
            throw std::invalid_argument(std::string(op) + ": A must lie inside [1..N]");
        if (i > 0 && A[i] <= A[i - 1])
            throw std::invalid_argument(std::string(op) + ": A must be strictly increasing");
    }
}

}  // namespace

std::vector<Int> finite_sums(const GeneratorSequence& G, std::size_t k) {
    return nonempty_subset_values(G, k, [](const Int& a, const Int& b) { return Int(a + b); });
}

std::vector<Int> finite_products(const GeneratorSequence& G, std::size_t k) {
    return nonempty_subset_values(G, k, [](const Int& a, const Int& b) { return Int(a * b); });
}

GeneratorSequence injective_sub_ip(const GeneratorSequence& G) {
    validate_generators(G);
    if (G.generators.empty())
        throw std::invalid_argument("injective_sub_ip: |G| must be >= 1");
    GeneratorSequence sub;
    Int running_sum = 0;
    for (const Int& g : G.generators) {
        if (g > running_sum) {
            sub.generators.push_back(g);
            running_sum += g;
        }
    }
    return sub;
}

std::optional<GeneratorSequence> is_ip_large_at_scale(const std::vector<std::int64_t>& A,
                                                      std::size_t k, std::int64_t N) {
    if (k == 0) throw std::invalid_argument("is_ip_large_at_scale: k must be >= 1");
    validate_subset(A, N, "is_ip_large_at_scale");
    if (k > 62) return std::nullopt;  // full sum would exceed any [1..N]

    std::vector<bool> in_A(static_cast<std::size_t>(N) + 1, false);
    for (std::int64_t a : A) in_A[static_cast<std::size_t>(a)] = true;

    static const std::int64_t kNodeBudget = 10'000'000;
    std::int64_t nodes = 0;
    std::vector<std::int64_t> chosen;
    std::vector<std::int64_t> sums;  // FS of chosen, unsorted

    // choose generators ascending from A; every new sum must stay inside A
    std::function<bool(std::size_t)> extend = [&](std::size_t from) -> bool {
        if (chosen.size() == k) return true;
        std::int64_t total = 0;
        for (std::int64_t s : chosen) total += s;
        for (std::size_t i = from; i < A.size(); ++i) {
            std::int64_t g = A[i];
            if (g + total > N) break;  // the full sum must lie in [1..N]
            if (++nodes > kNodeBudget)
                throw std::runtime_error("is_ip_large_at_scale: search budget exhausted");
            bool ok = true;
            for (std::int64_t s : sums)
                if (s + g > N || !in_A[static_cast<std::size_t>(s + g)]) { ok = false; break; }
            if (!ok) continue;
            std::size_t added = sums.size();
            for (std::size_t j = 0; j < added; ++j) sums.push_back(sums[j] + g);
            sums.push_back(g);
            chosen.push_back(g);
            if (extend(i + 1)) return true;
            chosen.pop_back();
            sums.resize(added);
        }
        return false;
    };

    if (!extend(0)) return std::nullopt;
    GeneratorSequence result;
    for (std::int64_t g : chosen) result.generators.push_back(g);
    return result;
}

Rat upper_density_window(const std::vector<std::int64_t>& A, std::int64_t N) {
    validate_subset(A, N, "upper_density_window");
    return Rat(Int(A.size()), Int(N));
}

Rat banach_density_window(const std::vector<std::int64_t>& A, std::int64_t N, std::int64_t n) {
    validate_subset(A, N, "banach_density_window");
    if (n < 1 || n > N)
        throw std::invalid_argument("banach_density_window: need 1 <= n <= N");
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t a : A) prefix[static_cast<std::size_t>(a)] = 1;
    for (std::int64_t i = 1; i <= N; ++i)
        prefix[static_cast<std::size_t>(i)] += prefix[static_cast<std::size_t>(i - 1)];
    std::int64_t best = 0;
    for (std::int64_t start = 1; start + n - 1 <= N; ++start)
        best = std::max(best, prefix[static_cast<std::size_t>(start + n - 1)] -
                                  prefix[static_cast<std::size_t>(start - 1)]);
    return Rat(Int(best), Int(n));
}

}  // namespace pr

#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here recomputes from first principles (componentwise loops,
// full subset enumeration, nested-loop solution scans) and deliberately
// avoids the library's own search/pruning code paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "pr/multi_index.hpp"
#include "pr/numeric.hpp"
#include "pr/polynomial.hpp"

namespace oracle {

inline bool leq_componentwise(const pr::MultiIndex& a, const pr::MultiIndex& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Minimal elements by direct pairwise comparison.
inline std::vector<pr::MultiIndex> minimal_indices(const std::vector<pr::MultiIndex>& support) {
    std::vector<pr::MultiIndex> out;
    for (const auto& a : support) {
        bool dominated = false;
        for (const auto& b : support)
            if (!(b == a) && leq_componentwise(b, a)) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(a);
    }
    return out;
}

inline std::vector<pr::MultiIndex> maximal_indices(const std::vector<pr::MultiIndex>& support) {
    std::vector<pr::MultiIndex> out;
    for (const auto& a : support) {
        bool dominated = false;
        for (const auto& b : support)
            if (!(b == a) && leq_componentwise(a, b)) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(a);
    }
    return out;
}

// A pair is balanced when some nonempty position set Lambda has equal partial
// exponent sums; a set is Rado when every pair is balanced.
inline bool pair_balanced(const pr::MultiIndex& a, const pr::MultiIndex& b) {
    std::size_t n = a.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::int64_t sa = 0, sb = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                sa += a[i];
                sb += b[i];
            }
        if (sa == sb) return true;
    }
    return false;
}

inline bool is_rado_set(const std::vector<pr::MultiIndex>& J) {
    for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t j = i + 1; j < J.size(); ++j)
            if (!pair_balanced(J[i], J[j])) return false;
    return true;
}

// All nonempty Rado subsets of the (oracle-)minimal indexes of the support,
// as a canonical set-of-sets for order-insensitive comparison.
inline std::set<std::set<std::vector<std::int64_t>>> rado_subsets_of_minimal(
    const std::vector<pr::MultiIndex>& support) {
    auto mins = minimal_indices(support);
    std::set<std::set<std::vector<std::int64_t>>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << mins.size()); ++mask) {
        std::vector<pr::MultiIndex> subset;
        for (std::size_t i = 0; i < mins.size(); ++i)
            if (mask >> i & 1) subset.push_back(mins[i]);
        if (!is_rado_set(subset)) continue;
        std::set<std::vector<std::int64_t>> key;
        for (const auto& m : subset) key.insert(m.exps);
        out.insert(std::move(key));
    }
    return out;
}

// Lexicographically-first minimal-size nonempty zero-sum subset, matching the
// library's documented tie-break exactly but via full enumeration.
inline std::optional<std::vector<std::size_t>> zero_sum_subset(
    const std::vector<pr::Int>& coefficients) {
    std::size_t n = coefficients.size();
    std::optional<std::vector<std::size_t>> best;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        pr::Int sum = 0;
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                sum += coefficients[i];
                positions.push_back(i);
            }
        if (sum != 0) continue;
        if (!best || positions.size() < best->size() ||
            (positions.size() == best->size() && positions < *best))
            best = positions;
    }
    return best;
}

// Nested-loop solution scan over [1..N]^n with whole-tuple evaluation.
// mode: 0 = any, 1 = at least two distinct values (covers both the
// non-trivial and exclude-constant filters at whole-tuple granularity).
inline std::vector<std::vector<std::int64_t>> solutions(const pr::Polynomial& P, std::int64_t N,
                                                        int mode = 0) {
    std::size_t n = P.var_count();
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> tuple(n, 1);
    while (true) {
        std::vector<pr::Int> assignment(tuple.begin(), tuple.end());
        if (P.evaluate(assignment) == 0) {
            bool ok = true;
            if (mode == 1) {
                ok = false;
                for (std::size_t i = 1; i < n; ++i) ok |= tuple[i] != tuple[0];
            }
            if (ok) out.push_back(tuple);
        }
        std::size_t d = n;
        while (d > 0 && tuple[d - 1] == N) tuple[--d] = 1;
        if (d == 0) break;
        ++tuple[d - 1];
    }
    return out;
}

// First monochromatic solution under the coloring, or nullopt; scans the
// oracle solution list directly.
inline std::optional<std::vector<std::int64_t>> find_monochromatic(
    const pr::Polynomial& P, const std::vector<int>& coloring, std::int64_t N, int mode = 0) {
    for (const auto& tuple : solutions(P, N, mode)) {
        int color = coloring[static_cast<std::size_t>(tuple[0] - 1)];
        bool mono = true;
        for (auto v : tuple) mono &= coloring[static_cast<std::size_t>(v - 1)] == color;
        if (mono) return tuple;
    }
    return std::nullopt;
}

// Naive modular evaluation of the full diagonal congruence
// sum_alpha c_alpha z^{|alpha|} == P(z,...,z) mod p, computed with exact
// big-integer arithmetic and a final reduction (no modular exponentiation).
inline std::int64_t diagonal_mod(const pr::Polynomial& P, std::int64_t z, std::int64_t p) {
    std::vector<pr::Int> assignment(P.var_count(), pr::Int(z));
    pr::Int value = P.evaluate(assignment) % p;
    if (value < 0) value += p;
    return value.convert_to<std::int64_t>();
}

// Same for the congruence restricted to a set of support indexes.
inline std::int64_t restricted_diagonal_mod(const std::vector<pr::MultiIndex>& indexes,
                                            const std::vector<pr::Int>& coefficients,
                                            std::int64_t z, std::int64_t p) {
    pr::Int sum = 0;
    for (std::size_t t = 0; t < indexes.size(); ++t) {
        pr::Int power = 1;
        for (std::int64_t e = 0; e < indexes[t].length(); ++e) power *= z;
        sum += coefficients[t] * power;
    }
    pr::Int value = sum % p;
    if (value < 0) value += p;
    return value.convert_to<std::int64_t>();
}

// Random polynomial over a variable prefix of {x, y, z}: up to max_terms
// monomials, each of total degree <= max_degree, coefficients in
// [-max_coeff, max_coeff] \ {0}. Retries until some variable occurs.
inline pr::Polynomial random_polynomial(std::mt19937_64& rng, int max_vars = 3,
                                        int max_degree = 3, int max_coeff = 4,
                                        int max_terms = 4, bool allow_constant_term = true) {
    static const std::vector<std::string> names = {"x", "y", "z", "w"};
    std::uniform_int_distribution<int> var_count(1, max_vars);
    std::uniform_int_distribution<int> term_count(1, max_terms);
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    while (true) {
        int n = var_count(rng);
        std::vector<std::string> vars(names.begin(), names.begin() + n);
        pr::Polynomial P(vars);
        int terms = term_count(rng);
        for (int t = 0; t < terms; ++t) {
            pr::MultiIndex index(static_cast<std::size_t>(n));
            int budget = std::uniform_int_distribution<int>(allow_constant_term ? 0 : 1,
                                                            max_degree)(rng);
            for (int d = 0; d < budget; ++d)
                ++index[static_cast<std::size_t>(
                    std::uniform_int_distribution<int>(0, n - 1)(rng))];
            int c = coeff(rng);
            if (c == 0) continue;
            P.add_term(index, c);
        }
        if (P.is_zero() || P.occurring_variables().empty()) continue;
        if (!allow_constant_term && P.has_constant_term()) continue;
        return P;
    }
}

inline std::vector<int> random_coloring(std::mt19937_64& rng, std::int64_t N, int r) {
    std::vector<int> coloring(static_cast<std::size_t>(N));
    std::uniform_int_distribution<int> color(0, r - 1);
    for (auto& c : coloring) c = color(rng);
    return coloring;
}

}  // namespace oracle

#include "pr/index_sets.hpp"

#include <algorithm>
#include <stdexcept>

#include "pr/subset_sum.hpp"

namespace pr {

namespace {

std::optional<std::vector<std::size_t>> balancing_lambda(const MultiIndex& alpha,
                                                         const MultiIndex& beta) {
    std::vector<Int> diffs(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) diffs[i] = Int(alpha[i]) - Int(beta[i]);
    return zero_sum_subset(diffs);
}

}  // namespace

std::optional<IndexSetWitness> is_rado_index_set(const std::vector<MultiIndex>& J) {
    if (J.empty()) throw std::invalid_argument("Rado index-set test requires nonempty J");
    for (const auto& idx : J)
        if (idx.size() != J.front().size())
            throw std::invalid_argument("multi-indexes in J have mixed arities");

    IndexSetWitness witness;
    witness.index_set = J;
    std::sort(witness.index_set.begin(), witness.index_set.end(), CanonicalLess{});
    for (std::size_t i = 0; i < witness.index_set.size(); ++i) {
        for (std::size_t j = i + 1; j < witness.index_set.size(); ++j) {
            auto lambda = balancing_lambda(witness.index_set[i], witness.index_set[j]);
            if (!lambda) return std::nullopt;
            witness.pair_witnesses.emplace(std::make_pair(i, j), std::move(*lambda));
        }
    }
    return witness;
}

std::vector<std::vector<MultiIndex>> rado_sets_of_minimal_indices(const Polynomial& P) {
    std::vector<MultiIndex> minimal = P.minimal_indices();
    std::sort(minimal.begin(), minimal.end(), CanonicalLess{});
    std::size_t m = minimal.size();
    if (m > 20)
        throw std::length_error("Rado-set enumeration supports at most 20 minimal indexes");

    // A subset qualifies iff every pair balances, so qualifying subsets are the
    // cliques of the pairwise-compatibility graph.
    std::vector<std::vector<bool>> compatible(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            compatible[i][j] = compatible[j][i] =
                balancing_lambda(minimal[i], minimal[j]).has_value();

    std::vector<std::vector<MultiIndex>> result;
    std::vector<std::size_t> current;
    // Extend cliques position by position; enumerate by size then lex so the
    // output order is size-graded and lexicographic within each size.
    auto extend = [&](auto&& self, std::size_t size, std::size_t from) -> void {
        if (current.size() == size) {
            std::vector<MultiIndex> subset;
            subset.reserve(size);
            for (std::size_t idx : current) subset.push_back(minimal[idx]);
            result.push_back(std::move(subset));
            return;
        }
        for (std::size_t next = from; next + (size - current.size()) <= m; ++next) {
            bool ok = true;
            for (std::size_t idx : current) {
                if (!compatible[idx][next]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            current.push_back(next);
            self(self, size, next + 1);
            current.pop_back();
        }
    };
    for (std::size_t size = 1; size <= m; ++size) extend(extend, size, 0);
    return result;
}

}  // namespace pr

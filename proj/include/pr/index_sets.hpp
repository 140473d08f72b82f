#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pr/multi_index.hpp"
#include "pr/polynomial.hpp"

namespace pr {

// Witness that J is a Rado set of indexes: for every unordered pair
// (alpha, beta) in J a nonempty set Lambda of variable positions with
// sum_{i in Lambda} alpha_i = sum_{i in Lambda} beta_i.
struct IndexSetWitness {
    std::vector<MultiIndex> index_set;  // J in canonical order
    // Keyed by positions (i < j) into index_set; values are 0-based variable
    // positions forming Lambda (lex-first minimal witness per pair).
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pair_witnesses;
};

// Nonempty J required (throws std::invalid_argument otherwise); nullopt when
// some pair admits no balancing Lambda.
std::optional<IndexSetWitness> is_rado_index_set(const std::vector<MultiIndex>& J);

// Every nonempty subset of minimal_indices(P) that is a Rado set, ordered by
// size then graded-lex over the canonically sorted minimal indexes.
// Throws std::length_error when P has more than 20 minimal indexes.
std::vector<std::vector<MultiIndex>> rado_sets_of_minimal_indices(const Polynomial& P);

}  // namespace pr

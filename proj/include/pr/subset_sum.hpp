#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pr/numeric.hpp"

namespace pr {

// First nonempty position set J (ordered by size, then lexicographically)
// with sum_{j in J} values[j] == 0, or nullopt when none exists.
// Direct enumeration up to 20 values, meet-in-the-middle up to 40;
// larger inputs throw std::length_error.
std::optional<std::vector<std::size_t>> zero_sum_subset(const std::vector<Int>& values);

// Existence-only variant with the same size bounds.
bool has_zero_sum_subset(const std::vector<Int>& values);

}  // namespace pr

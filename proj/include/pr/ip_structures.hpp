#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pr/numeric.hpp"

namespace pr {

// Strictly increasing positive integers; the first k elements generate the
// finite-sums set FS(G, k) and the finite-products set FP(G, k).
struct GeneratorSequence {
    std::vector<Int> generators;

    bool operator==(const GeneratorSequence&) const = default;
};

// All sums over nonempty subsets of the first k generators, deduplicated and
// sorted. Requires 1 <= k <= |G| (std::invalid_argument) and k <= 20
// (std::length_error: 2^k subset enumeration).
std::vector<Int> finite_sums(const GeneratorSequence& G, std::size_t k);

// Multiplicative analogue of finite_sums.
std::vector<Int> finite_products(const GeneratorSequence& G, std::size_t k);

// The inductive sub-sequence g'_1 = g_1, g'_{i+1} = min{g_j : g_j > g'_1 +
// ... + g'_i}, stopping when no generator exceeds the running sum. Its finite
// sums are pairwise distinct. |G| >= 1 required.
GeneratorSequence injective_sub_ip(const GeneratorSequence& G);

// Backtracking search for k generators (drawn from A, ascending) whose full
// finite-sums set lies inside A. A must be a strictly increasing subset of
// [1..N]. Absence at this finite scale says nothing about IP-largeness of an
// infinite set; callers should surface that caveat. k = 0 is an error; 10^7
// search nodes are the internal budget (std::runtime_error beyond).
std::optional<GeneratorSequence> is_ip_large_at_scale(const std::vector<std::int64_t>& A,
                                                      std::size_t k, std::int64_t N);

// |A| / N as an exact rational.
Rat upper_density_window(const std::vector<std::int64_t>& A, std::int64_t N);

// max over intervals I of length n inside [1..N] of |A cap I| / n, exact.
Rat banach_density_window(const std::vector<std::int64_t>& A, std::int64_t N, std::int64_t n);

}  // namespace pr

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pr/classification.hpp"
#include "pr/index_sets.hpp"
#include "pr/polynomial.hpp"

namespace pr {

// Certificate that P = 0 has no solutions besides possibly the constant ones:
// at the prime p, the full congruence sum_a c_a z^{|a|} = 0 (mod p) and, for
// every Rado set J of minimal indexes, the restricted congruence over J, all
// have no roots z in [1, p-1]. Residue tables are included so the certificate
// can be re-verified with modular arithmetic alone.
struct ModPObstruction {
    std::int64_t p = 0;
    // z in [1, p-1] -> sum_a c_a z^{|a|} mod p; certifying tables contain no zero.
    std::map<std::int64_t, std::int64_t> condition1_residue_table;

    struct RadoSetReport {
        IndexSetWitness rado_set;
        std::map<std::int64_t, std::int64_t> residue_table;
    };
    std::vector<RadoSetReport> condition2_reports;

    // Positive roots of the diagonal P(c, ..., c) = 0: the solutions the
    // theorem cannot exclude.
    std::vector<Int> constant_solutions;
};

nlohmann::json mod_p_obstruction_to_json(const ModPObstruction& cert);

// Returns the certificate iff both conditions hold at p. Requires polynomial
// mode, no constant term, and prime p (composite p or a constant term is an
// error). May throw std::length_error via the Rado-set enumeration when P has
// more than 20 minimal indexes.
std::optional<ModPObstruction> check_mod_p(const Polynomial& P, std::int64_t p);

// Smallest prime p <= prime_bound with check_mod_p(P, p) present. Absence is
// inconclusive: the theorem's hypothesis is existential over all primes.
std::optional<std::pair<std::int64_t, ModPObstruction>> find_mod_p_obstruction(
    const Polynomial& P, std::int64_t prime_bound);

// For polynomials of the shape P_1(x_1) + ... + P_n(x_n): groups the MAXIMAL
// indexes of supp(P) by length. The report certifies "not non-trivially PR"
// exactly when no nonempty subset of any single class has coefficients
// summing to zero; otherwise the first zero-sum subset found is recorded as
// (inconclusive) evidence. A class subset of equal-length maximal indexes is
// the "maximal homogeneous set" of the underlying theorem.
struct MaximalHomogeneousReport {
    std::map<std::int64_t, std::vector<MultiIndex>> degree_classes;
    std::map<std::int64_t, std::vector<Int>> class_coefficients;
    // (length, positions into that class) whose coefficients sum to zero.
    std::optional<std::pair<std::int64_t, std::vector<std::size_t>>> zero_sum_subset;
    std::vector<Int> constant_solutions;

    bool certifies_not_pr() const { return !zero_sum_subset.has_value(); }
};

nlohmann::json maximal_homogeneous_to_json(const MaximalHomogeneousReport& report);

// Requires: no constant term and every monomial contains exactly one variable
// (std::invalid_argument otherwise).
MaximalHomogeneousReport maximal_homogeneous_obstruction(const Polynomial& P);

// For sum_i c_i x_i^{d_i} (each variable in exactly one monomial): not
// non-trivially PR unless some nonempty equal-degree subset of coefficients
// sums to zero; the positive direction is inconclusive (verdict Open with the
// subset recorded). Shape mismatch is an error.
Classification degree_grouped_rado(const Polynomial& P);

// For homogeneous P: if every nonempty subset of the support has coefficients
// summing to nonzero, P = 0 is not PR at all (not even constant solutions,
// since the full sum is nonzero). Otherwise the zero-sum subset found is
// recorded and the report does not certify. Non-homogeneous input is an error.
struct HomogeneousSubsetReport {
    std::vector<MultiIndex> support;
    std::vector<Int> coefficients;
    std::optional<std::vector<std::size_t>> zero_sum_subset;  // positions into support

    bool certifies_not_pr() const { return !zero_sum_subset.has_value(); }
};

nlohmann::json homogeneous_subset_to_json(const HomogeneousSubsetReport& report);

HomogeneousSubsetReport homogeneous_subset_obstruction(const Polynomial& P);

// Full two-sided characterization for c_1 x_1 + ... + c_n x_n + Q(y) with
// n >= 3 and Q nonlinear univariate without constant term: non-trivially PR
// iff the coefficients have a zero-sum subset. Any shape mismatch throws
// std::invalid_argument directing the caller to the general pipeline.
Classification characterize_linear_plus_nonlinear(const Polynomial& P);

}  // namespace pr

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pr/classification.hpp"
#include "pr/polynomial.hpp"

namespace pr {

// Lexicographically-first minimal-size nonempty J (0-based positions) with
// sum_{j in J} c_j == 0. Requires nonempty, all-nonzero coefficients.
std::optional<std::vector<std::size_t>> rado_condition(const std::vector<Int>& coefficients);

// Rado's theorem for linear equations, homogeneous and inhomogeneous.
// The equation is sum c_i x_i = d with d = -(constant term of P).
// Requires P linear and nonzero.
Classification classify_linear(const Polynomial& P);

// Multiplicative Rado: prod x_i^{c_i} = 1 is PR iff the Rado condition holds
// for the exponent vector.
Classification classify_multiplicative(const std::vector<Int>& exponents);

// Lefmann: c_1 x_1^{1/k} + ... + c_n x_n^{1/k} = 0 is PR iff the Rado
// condition holds for (c_i), independent of k >= 1.
Classification classify_root_linear(const std::vector<Int>& coefficients, std::uint32_t k);

// P = c_1 x_1 + ... + c_n x_n + Q(y_1, ..., y_k): every x_i occurs exactly
// once, linearly and alone in its term; n >= 2; Q has no constant term; the
// Rado condition holds for (c_i).
struct RadoDecomposition {
    std::vector<std::string> linear_vars;  // x_1, ..., x_n
    std::vector<Int> coefficients;         // c_1, ..., c_n
    Polynomial remainder;                  // Q over the y variables
    std::vector<std::string> remainder_vars;  // y_1, ..., y_k (occurring)
    std::vector<std::size_t> witness_J;    // 0-based into linear_vars
};
std::optional<RadoDecomposition> detect_rado_polynomial(const Polynomial& P);

// Injectivity guaranteed by Generalized Rado for a detected decomposition.
std::vector<InjectivityConstraint> rado_polynomial_injectivity(const RadoDecomposition& d);

// ProvablyPR classification for a detected Rado polynomial.
Classification classify_rado_polynomial(const Polynomial& P, const RadoDecomposition& d);

}  // namespace pr

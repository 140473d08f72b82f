#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pr/multi_index.hpp"
#include "pr/numeric.hpp"

namespace pr {

struct ReciprocalResult;
struct DiagonalResult;

class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Int, CanonicalLess>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> variables, bool laurent = false);

    static Polynomial constant(const Int& value);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t var_count() const { return vars_.size(); }
    bool is_laurent() const { return laurent_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Merges with any existing term at the same index; zero results are erased.
    void add_term(const MultiIndex& index, const Int& coeff);

    Int coefficient(const MultiIndex& index) const;
    Int constant_term() const;
    bool has_constant_term() const;

    // True when some stored exponent is negative (requires laurent mode).
    bool has_negative_exponent() const;

    // Index of a variable name, or nullopt when absent from the ambient list.
    std::optional<std::size_t> var_position(const std::string& name) const;

    // Variables that actually occur in some term (subset of vars()).
    std::vector<std::string> occurring_variables() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial pow(std::uint32_t exponent) const;

    // Exact evaluation; assignment aligned with vars(). Throws if any stored
    // exponent is negative (use evaluate_rational for Laurent polynomials).
    Int evaluate(const std::vector<Int>& assignment) const;
    Int evaluate(const std::map<std::string, Int>& assignment) const;

    Rat evaluate_rational(const std::vector<Rat>& assignment) const;
    Rat evaluate_rational(const std::map<std::string, Rat>& assignment) const;

    std::vector<MultiIndex> support() const;

    // Componentwise-minimal / maximal elements of the support.
    // Requires a nonzero polynomial in polynomial (non-Laurent) mode.
    std::vector<MultiIndex> minimal_indices() const;
    std::vector<MultiIndex> maximal_indices() const;

    // Degree l when every support index has total length l; nullopt otherwise
    // (and for the zero polynomial, whose degree is undetermined).
    std::optional<std::int64_t> homogeneous_degree() const;

    // Every support index has length <= 1 (constant term allowed).
    bool is_linear() const;

    // Max support length; 0 for the zero polynomial.
    std::int64_t total_degree() const;

    // Full distributive expansion of var := replacement. If var does not occur,
    // returns *this unchanged. Throws on variable capture (replacement shares a
    // name with a remaining variable) and on negative exponents of var.
    Polynomial substitute(const std::string& var, const Polynomial& replacement) const;

    // Requires homogeneous polynomial mode input.
    ReciprocalResult reciprocal_transform() const;

    DiagonalResult constant_diagonal() const;

    // Canonical display: "<coeff>*v1^e1*..." terms joined by " + ", coefficient
    // always explicit, "^1" omitted, all-zero index printed as the bare
    // coefficient, zero polynomial printed "0". Term order: CanonicalLess.
    std::string format() const;

    // Same terms re-expressed over new_vars (a superset of the occurring
    // variables; throws when an occurring variable is dropped).
    Polynomial with_variables(const std::vector<std::string>& new_vars) const;

    Polynomial renamed(const std::map<std::string, std::string>& mapping) const;

    bool operator==(const Polynomial& rhs) const = default;

private:
    void check_index(const MultiIndex& index) const;

    std::vector<std::string> vars_;
    TermMap terms_;
    bool laurent_ = false;
};

struct ReciprocalResult {
    Polynomial transformed;        // polynomial mode, exponents l - alpha_i
    std::int64_t clearing_degree;  // l: multiplied through by (x_1...x_n)^l
};

struct DiagonalResult {
    std::vector<Int> coeffs;  // coeffs[k] multiplies c^k in P(c,...,c)
    bool identically_zero;    // every positive integer is then a root
    std::vector<Int> roots;   // positive integer roots, ascending
};

// Equality of the underlying term structure regardless of variable-list order
// (both are re-expressed over the sorted union of their occurring variables).
bool same_polynomial(const Polynomial& a, const Polynomial& b);

// Re-express both over the merged variable list (a's order, then b's extras).
std::pair<Polynomial, Polynomial> unify_variables(const Polynomial& a, const Polynomial& b);

}  // namespace pr

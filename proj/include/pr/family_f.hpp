#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pr/classification.hpp"
#include "pr/classifier.hpp"
#include "pr/polynomial.hpp"

namespace pr {

// Derivation rules for the closure family of provably partition-regular
// equations. Axioms: RadoPolynomial (linear block with a zero-sum subset plus
// a remainder polynomial), Product (x = y_1*...*y_k), WeightedProduct
// (x = prod y_i^{a_i} with sum a_i = 1, negative a_i allowed, stored in the
// monomial-cleared two-term form). Closure rules: Substitution (splice
// w = g(x) into f(w, y) with disjoint variable sets) and Reciprocal (the
// denominator-clearing transform of a homogeneous member).
enum class FamilyFRule {
    RadoPolynomial,
    Product,
    WeightedProduct,
    Substitution,
    Reciprocal,
};

std::string to_string(FamilyFRule rule);

struct FamilyFNode;
using FamilyFCertificate = std::shared_ptr<const FamilyFNode>;

struct FamilyFNode {
    FamilyFRule rule;
    Polynomial poly;  // the equation this node certifies, over its occurring variables
    // Claimed distinctness guarantees; validation checks they are entailed by
    // the constraints derived from the rule structure.
    std::vector<InjectivityConstraint> injectivity;

    // RadoPolynomial payload.
    std::optional<RadoDecomposition> rado;

    // Product / WeightedProduct payload. For WeightedProduct the exponents
    // align with factor_variables and sum to 1.
    std::string head_variable;
    std::vector<std::string> factor_variables;
    std::vector<Int> factor_exponents;

    // Substitution payload: poly == outer.poly with glue_variable replaced by
    // the solved side of inner.poly (inner.poly is +-(glue - g)).
    FamilyFCertificate outer;
    FamilyFCertificate inner;
    std::string glue_variable;

    // Reciprocal payload: poly is the cleared reciprocal transform of
    // child.poly (which must be homogeneous).
    FamilyFCertificate child;
    std::int64_t clearing_degree = 0;

    explicit FamilyFNode(FamilyFRule r, Polynomial p) : rule(r), poly(std::move(p)) {}
};

// Thrown when a certificate fails validation; carries the path of the
// offending node ("root", "root.f", "root.g.child", ...).
class FamilyFError : public std::runtime_error {
public:
    FamilyFError(std::string node_path, const std::string& message);
    const std::string& node_path() const noexcept { return node_path_; }

private:
    std::string node_path_;
};

// Checks every node of the certificate bottom-up (axiom shapes, variable
// disjointness, substitution expansion, homogeneity and transform equality)
// and that the root certifies P. On success returns ProvablyPR with the
// injectivity constraints DERIVED from the rule bookkeeping (substitution
// degrades a bound of s to s-1, and to s-2 when the constraint mentioned the
// glue variable; bounds below 2 are dropped). Throws FamilyFError otherwise.
Classification validate_family_f(const Polynomial& P, const FamilyFCertificate& cert);

// Bounded deterministic search for a derivation: axioms first, then
// substitution un-splits (replace a grouped factor pattern by a fresh
// variable), then the reciprocal untransform for homogeneous inputs. Absence
// means "no derivation found within depth", never a non-PR verdict. Any
// returned certificate passes validate_family_f. budget caps the total number
// of search calls.
std::optional<FamilyFCertificate> derive_family_f(const Polynomial& P, int max_depth,
                                                  std::uint64_t budget = 20000);

nlohmann::json family_f_to_json(const FamilyFCertificate& cert);
FamilyFCertificate family_f_from_json(const nlohmann::json& node);

}  // namespace pr

#include "pr/classifier.hpp"

#include <algorithm>
#include <stdexcept>

#include "pr/subset_sum.hpp"

namespace pr {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ProvablyPR: return "ProvablyPR";
        case Verdict::ProvablyNotPR: return "ProvablyNotPR";
        case Verdict::NotNonTriviallyPR: return "NotNonTriviallyPR";
        case Verdict::Open: return "Open";
    }
    return "Open";
}

nlohmann::json injectivity_to_json(const std::vector<InjectivityConstraint>& constraints,
                                   const std::vector<std::string>& variable_order) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : constraints) {
        nlohmann::json positions = nlohmann::json::array();
        for (const auto& v : c.variables) {
            auto it = std::find(variable_order.begin(), variable_order.end(), v);
            if (it != variable_order.end())
                positions.push_back(static_cast<std::size_t>(it - variable_order.begin()) + 1);
        }
        out.push_back({{"variables", c.variables},
                       {"positions", positions},
                       {"min_distinct", c.min_distinct}});
    }
    return out;
}

nlohmann::json classification_to_json(const Classification& c,
                                      const std::vector<std::string>& variable_order) {
    return {{"verdict", to_string(c.verdict)},
            {"method", c.method},
            {"certificate", c.certificate},
            {"injectivity", injectivity_to_json(c.injectivity, variable_order)},
            {"notes", c.notes}};
}

namespace {

nlohmann::json int_vector_to_json(const std::vector<Int>& values) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

nlohmann::json positions_one_based(const std::vector<std::size_t>& positions) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t p : positions) out.push_back(p + 1);
    return out;
}

void require_nonzero(const std::vector<Int>& coefficients, const char* what) {
    if (coefficients.empty())
        throw std::invalid_argument(std::string(what) + ": empty coefficient list");
    for (const auto& c : coefficients)
        if (c == 0) throw std::invalid_argument(std::string(what) + ": zero coefficient");
}

}  // namespace

std::optional<std::vector<std::size_t>> rado_condition(const std::vector<Int>& coefficients) {
    require_nonzero(coefficients, "rado_condition");
    return zero_sum_subset(coefficients);
}

Classification classify_linear(const Polynomial& P) {
    if (P.is_zero()) throw std::domain_error("classify_linear: zero polynomial");
    if (!P.is_linear()) throw std::domain_error("classify_linear: nonlinear input");

    std::vector<std::string> vars = P.occurring_variables();
    std::vector<Int> coefficients;
    coefficients.reserve(vars.size());
    for (const auto& v : vars) {
        MultiIndex index(P.var_count());
        index.exps[*P.var_position(v)] = 1;
        coefficients.push_back(P.coefficient(index));
    }
    Int d = -P.constant_term();  // equation: sum c_i x_i = d

    Classification result;
    result.method = "rado_linear";
    std::size_t n = vars.size();

    if (n == 0) {
        // Pure nonzero constant: no solutions at all.
        result.verdict = Verdict::ProvablyNotPR;
        result.certificate = {{"type", "rado_linear"},
                              {"homogeneous", false},
                              {"d", d.str()},
                              {"reason", "no variables and d != 0: the equation has no solutions"}};
        result.notes.push_back("degenerate constant equation");
        return result;
    }

    auto J = rado_condition(coefficients);
    Int coefficient_sum{0};
    for (const auto& c : coefficients) coefficient_sum += c;

    auto attach_injectivity = [&](Classification& c, bool homogeneous) {
        if (homogeneous && n >= 3) {
            c.injectivity.push_back({vars, n});
            c.notes.push_back("linear equation in more than two variables: PR iff injectively PR");
        } else if (!homogeneous) {
            c.notes.push_back(
                "no injectivity guarantee derived for inhomogeneous equations (the constant "
                "solution may be the only one)");
        } else {
            c.notes.push_back("two-variable linear equation: no nontrivial injectivity guarantee");
        }
    };

    nlohmann::json base = {{"type", "rado_linear"},
                           {"variables", vars},
                           {"coefficients", int_vector_to_json(coefficients)},
                           {"d", d.str()},
                           {"homogeneous", d == 0}};

    if (d == 0) {
        if (J) {
            result.verdict = Verdict::ProvablyPR;
            base["J"] = positions_one_based(*J);
            result.certificate = base;
            attach_injectivity(result, true);
            if (n == 2)
                result.notes.push_back(
                    "with n = 2 the Rado condition forces c1 = -c2: only trivial solutions x1 = x2 are guaranteed");
        } else {
            result.verdict = Verdict::ProvablyNotPR;
            base["reason"] = "no nonempty zero-sum subset of the coefficients exists";
            result.certificate = base;
        }
        return result;
    }

    // Inhomogeneous case: PR iff (exists positive integer k with k*sum = d) or
    // (exists integer z with z*sum = d and the Rado condition holds); when
    // sum = 0, "z*0 = d" holds iff d = 0, which is false here.
    std::optional<Int> witness_k;
    if (coefficient_sum != 0 && d % coefficient_sum == 0) {
        Int k = d / coefficient_sum;
        if (k > 0) witness_k = k;
    }
    bool bullet1 = witness_k.has_value();
    bool divisible = coefficient_sum != 0 && d % coefficient_sum == 0;
    bool bullet2 = divisible && J.has_value();

    base["coefficient_sum"] = coefficient_sum.str();
    if (bullet1 || bullet2) {
        result.verdict = Verdict::ProvablyPR;
        if (bullet1) {
            base["witness_k"] = witness_k->str();
            result.notes.push_back("x1 = ... = xn = " + witness_k->str() +
                                   " is a constant solution");
        }
        if (bullet2) {
            base["witness_z"] = Int(d / coefficient_sum).str();
            base["J"] = positions_one_based(*J);
        }
        result.certificate = base;
        attach_injectivity(result, false);
    } else {
        result.verdict = Verdict::ProvablyNotPR;
        base["reason"] =
            "no positive integer k with k*sum(c) = d, and no integer z with z*sum(c) = d "
            "combined with a zero-sum subset";
        if (J) base["J"] = positions_one_based(*J);
        result.certificate = base;
    }
    return result;
}

Classification classify_multiplicative(const std::vector<Int>& exponents) {
    require_nonzero(exponents, "classify_multiplicative");
    auto J = zero_sum_subset(exponents);

    Classification result;
    result.method = "multiplicative_rado";
    nlohmann::json base = {{"type", "multiplicative_rado"},
                           {"exponents", int_vector_to_json(exponents)}};
    if (J) {
        result.verdict = Verdict::ProvablyPR;
        base["J"] = positions_one_based(*J);
        result.certificate = base;
        if (exponents.size() == 2 && exponents[0] == -exponents[1])
            result.notes.push_back("exponent vector (c, -c): only trivial solutions x1 = x2 are guaranteed");
    } else {
        // x1 = ... = xn = 1 solves every product equation, so the negative
        // direction can only exclude monochromatic solutions with >= 2
        // distinct values.
        result.verdict = Verdict::NotNonTriviallyPR;
        base["reason"] = "no nonempty zero-sum subset of the exponents exists";
        base["constant_solutions"] = nlohmann::json::array({"1"});
        result.certificate = base;
        result.notes.push_back("x1 = ... = xn = 1 is always a solution; the obstruction "
                               "applies to solutions with at least 2 distinct values");
    }
    return result;
}

Classification classify_root_linear(const std::vector<Int>& coefficients, std::uint32_t k) {
    require_nonzero(coefficients, "classify_root_linear");
    if (k == 0) throw std::invalid_argument("classify_root_linear: k must be >= 1");
    auto J = zero_sum_subset(coefficients);

    Classification result;
    result.method = "root_linear_lefmann";
    nlohmann::json base = {{"type", "root_linear"},
                           {"coefficients", int_vector_to_json(coefficients)},
                           {"k", k}};
    if (J) {
        result.verdict = Verdict::ProvablyPR;
        base["J"] = positions_one_based(*J);
        result.notes.push_back("partition regularity of the k-th-root equation is independent of k");
    } else {
        result.verdict = Verdict::ProvablyNotPR;
        base["reason"] = "no nonempty zero-sum subset of the coefficients exists";
    }
    result.certificate = base;
    return result;
}

std::optional<RadoDecomposition> detect_rado_polynomial(const Polynomial& P) {
    if (P.is_zero()) return std::nullopt;
    if (P.has_negative_exponent()) return std::nullopt;
    if (P.has_constant_term()) return std::nullopt;

    // A linear variable occurs in exactly one term, and that term is c * v.
    std::size_t var_count = P.var_count();
    std::vector<int> occurrences(var_count, 0);
    std::vector<bool> alone_linear(var_count, true);
    for (const auto& [index, coeff] : P.terms()) {
        (void)coeff;
        auto positions = index.nonzero_positions();
        for (std::size_t p : positions) {
            occurrences[p] += 1;
            if (positions.size() != 1 || index[p] != 1) alone_linear[p] = false;
        }
    }

    RadoDecomposition d;
    d.remainder = Polynomial(P.vars(), P.is_laurent());
    std::vector<bool> is_linear_var(var_count, false);
    for (std::size_t p = 0; p < var_count; ++p)
        if (occurrences[p] == 1 && alone_linear[p]) is_linear_var[p] = true;

    for (const auto& [index, coeff] : P.terms()) {
        auto positions = index.nonzero_positions();
        if (positions.size() == 1 && index[positions[0]] == 1 && is_linear_var[positions[0]]) {
            d.linear_vars.push_back(P.vars()[positions[0]]);
            d.coefficients.push_back(coeff);
        } else {
            d.remainder.add_term(index, coeff);
        }
    }
    if (d.linear_vars.size() < 2) return std::nullopt;

    auto J = zero_sum_subset(d.coefficients);
    if (!J) return std::nullopt;
    d.witness_J = *J;
    d.remainder_vars = d.remainder.occurring_variables();
    return d;
}

std::vector<InjectivityConstraint> rado_polynomial_injectivity(const RadoDecomposition& d) {
    std::size_t n = d.linear_vars.size();
    std::size_t k = d.remainder_vars.size();
    std::vector<InjectivityConstraint> constraints;

    if (d.remainder.is_zero()) {
        // Pure linear equation: injectively PR iff n >= 3.
        if (n >= 3) constraints.push_back({d.linear_vars, n});
        return constraints;
    }
    if (d.remainder.is_linear()) {
        // R is linear in n + k >= 3 variables: full injectivity.
        std::vector<std::string> all = d.linear_vars;
        all.insert(all.end(), d.remainder_vars.begin(), d.remainder_vars.end());
        constraints.push_back({all, n + k});
        return constraints;
    }
    if (n == 2 && k == 1) {
        constraints.push_back({d.linear_vars, 2});
        return constraints;
    }
    if (n >= 3) constraints.push_back({d.linear_vars, n - 1});
    if (k >= 2) constraints.push_back({d.remainder_vars, k});
    return constraints;
}

Classification classify_rado_polynomial(const Polynomial& P, const RadoDecomposition& d) {
    (void)P;
    Classification result;
    result.verdict = Verdict::ProvablyPR;
    result.method = "generalized_rado";
    result.certificate = {{"type", "rado_polynomial"},
                          {"linear_variables", d.linear_vars},
                          {"coefficients", int_vector_to_json(d.coefficients)},
                          {"remainder", d.remainder.format()},
                          {"remainder_variables", d.remainder_vars},
                          {"J", positions_one_based(d.witness_J)}};
    result.injectivity = rado_polynomial_injectivity(d);
    if (result.injectivity.empty())
        result.notes.push_back("no nontrivial injectivity guarantee for this shape");
    return result;
}

}  // namespace pr

#include "pr/obstruction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "pr/classifier.hpp"
#include "pr/subset_sum.hpp"

namespace pr {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_reduce(const Int& value, std::int64_t p) {
    Int r = value % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t p) {
    std::int64_t result = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

void require_polynomial_no_constant(const Polynomial& P, const char* op) {
    if (P.has_negative_exponent())
        throw std::invalid_argument(std::string(op) + ": polynomial mode required");
    if (P.has_constant_term())
        throw std::invalid_argument(std::string(op) + ": constant term present");
}

// Residue table of sum over `terms` of c * z^{|index|} at every z in [1, p-1];
// nullopt as soon as some z is a root.
std::optional<std::map<std::int64_t, std::int64_t>> nonvanishing_table(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& length_coeff_pairs,
    std::int64_t p) {
    std::map<std::int64_t, std::int64_t> table;
    for (std::int64_t z = 1; z < p; ++z) {
        std::int64_t value = 0;
        for (const auto& [length, coeff] : length_coeff_pairs)
            value = (value + coeff * pow_mod(z, length, p)) % p;
        if (value == 0) return std::nullopt;
        table[z] = value;
    }
    return table;
}

nlohmann::json residue_table_to_json(const std::map<std::int64_t, std::int64_t>& table) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [z, value] : table) out[std::to_string(z)] = value;
    return out;
}

nlohmann::json multi_index_to_json(const MultiIndex& index) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < index.size(); ++i) out.push_back(index[i]);
    return out;
}

nlohmann::json int_vector_to_json(const std::vector<Int>& values) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

// Decomposition for the single-variable-monomial shape P_1(x_1)+...+P_n(x_n):
// each support index as (variable position, degree, coefficient).
struct SingleVariableTerm {
    std::size_t variable;
    std::int64_t degree;
    Int coeff;
    MultiIndex index;
};

std::vector<SingleVariableTerm> single_variable_terms(const Polynomial& P, const char* op) {
    require_polynomial_no_constant(P, op);
    std::vector<SingleVariableTerm> out;
    for (const auto& [index, coeff] : P.terms()) {
        auto positions = index.nonzero_positions();
        if (positions.size() != 1)
            throw std::invalid_argument(std::string(op) +
                                        ": a monomial contains more than one variable");
        out.push_back({positions[0], index[positions[0]], coeff, index});
    }
    if (out.empty()) throw std::invalid_argument(std::string(op) + ": zero polynomial");
    return out;
}

}  // namespace

std::optional<ModPObstruction> check_mod_p(const Polynomial& P, std::int64_t p) {
    require_polynomial_no_constant(P, "check_mod_p");
    if (!is_prime(p)) throw std::invalid_argument("check_mod_p: p must be prime");
    if (P.is_zero()) return std::nullopt;  // 0 = 0 (mod p) at every z

    ModPObstruction cert;
    cert.p = p;

    // Condition (1): the full congruence sum_a c_a z^{|a|} has no nonzero root.
    std::vector<std::pair<std::int64_t, std::int64_t>> all_terms;
    for (const auto& [index, coeff] : P.terms())
        all_terms.emplace_back(index.length(), mod_reduce(coeff, p));
    auto table1 = nonvanishing_table(all_terms, p);
    if (!table1) return std::nullopt;
    cert.condition1_residue_table = std::move(*table1);

    // Condition (2): likewise for every Rado set of minimal indexes.
    for (const auto& J : rado_sets_of_minimal_indices(P)) {
        std::vector<std::pair<std::int64_t, std::int64_t>> restricted;
        for (const auto& alpha : J)
            restricted.emplace_back(alpha.length(), mod_reduce(P.coefficient(alpha), p));
        auto table = nonvanishing_table(restricted, p);
        if (!table) return std::nullopt;
        auto witness = is_rado_index_set(J);
        cert.condition2_reports.push_back({std::move(*witness), std::move(*table)});
    }

    cert.constant_solutions = P.constant_diagonal().roots;
    return cert;
}

std::optional<std::pair<std::int64_t, ModPObstruction>> find_mod_p_obstruction(
    const Polynomial& P, std::int64_t prime_bound) {
    if (prime_bound < 2)
        throw std::invalid_argument("find_mod_p_obstruction: prime_bound must be >= 2");
    for (std::int64_t p = 2; p <= prime_bound; ++p) {
        if (!is_prime(p)) continue;
        if (auto cert = check_mod_p(P, p)) return std::make_pair(p, std::move(*cert));
    }
    return std::nullopt;
}

nlohmann::json mod_p_obstruction_to_json(const ModPObstruction& cert) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& report : cert.condition2_reports) {
        nlohmann::json indexes = nlohmann::json::array();
        for (const auto& alpha : report.rado_set.index_set) indexes.push_back(multi_index_to_json(alpha));
        nlohmann::json witnesses = nlohmann::json::array();
        for (const auto& [pair, lambda] : report.rado_set.pair_witnesses) {
            nlohmann::json positions = nlohmann::json::array();
            for (std::size_t v : lambda) positions.push_back(v + 1);
            witnesses.push_back({{"pair", {pair.first + 1, pair.second + 1}},
                                 {"lambda", positions}});
        }
        reports.push_back({{"J", indexes},
                           {"pair_witnesses", witnesses},
                           {"residues", residue_table_to_json(report.residue_table)}});
    }
    return {{"type", "mod_p_obstruction"},
            {"p", cert.p},
            {"condition1_residues", residue_table_to_json(cert.condition1_residue_table)},
            {"condition2_reports", reports},
            {"constant_solutions", int_vector_to_json(cert.constant_solutions)},
            {"conclusion", "not PR except possibly constant solutions"}};
}

MaximalHomogeneousReport maximal_homogeneous_obstruction(const Polynomial& P) {
    single_variable_terms(P, "maximal_homogeneous_obstruction");  // shape/mode checks

    MaximalHomogeneousReport report;
    for (const auto& alpha : P.maximal_indices()) {
        report.degree_classes[alpha.length()].push_back(alpha);
        report.class_coefficients[alpha.length()].push_back(P.coefficient(alpha));
    }
    for (const auto& [length, coeffs] : report.class_coefficients) {
        if (auto subset = zero_sum_subset(coeffs)) {
            report.zero_sum_subset = std::make_pair(length, *subset);
            break;
        }
    }
    report.constant_solutions = P.constant_diagonal().roots;
    return report;
}

nlohmann::json maximal_homogeneous_to_json(const MaximalHomogeneousReport& report) {
    nlohmann::json classes = nlohmann::json::object();
    for (const auto& [length, indexes] : report.degree_classes) {
        nlohmann::json entry = nlohmann::json::array();
        const auto& coeffs = report.class_coefficients.at(length);
        for (std::size_t i = 0; i < indexes.size(); ++i)
            entry.push_back({{"index", multi_index_to_json(indexes[i])},
                             {"coefficient", coeffs[i].str()}});
        classes[std::to_string(length)] = entry;
    }
    nlohmann::json out = {{"type", "maximal_homogeneous"},
                          {"degree_classes", classes},
                          {"certifies_not_nontrivially_pr", report.certifies_not_pr()},
                          {"constant_solutions", int_vector_to_json(report.constant_solutions)},
                          {"interpretation",
                           "maximal homogeneous set = equal-length subset of the maximal indexes"}};
    if (report.zero_sum_subset) {
        nlohmann::json positions = nlohmann::json::array();
        for (std::size_t i : report.zero_sum_subset->second) positions.push_back(i + 1);
        out["zero_sum_subset"] = {{"length", report.zero_sum_subset->first},
                                  {"positions", positions}};
    }
    return out;
}

Classification degree_grouped_rado(const Polynomial& P) {
    auto terms = single_variable_terms(P, "degree_grouped_rado");
    std::set<std::size_t> seen;
    for (const auto& t : terms)
        if (!seen.insert(t.variable).second)
            throw std::invalid_argument(
                "degree_grouped_rado: a variable occurs in more than one monomial");

    std::map<std::int64_t, std::vector<Int>> groups;
    std::map<std::int64_t, std::vector<std::string>> group_vars;
    for (const auto& t : terms) {
        groups[t.degree].push_back(t.coeff);
        group_vars[t.degree].push_back(P.vars()[t.variable]);
    }

    nlohmann::json grouped = nlohmann::json::object();
    for (const auto& [degree, coeffs] : groups) {
        nlohmann::json entry = nlohmann::json::array();
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            entry.push_back({{"variable", group_vars.at(degree)[i]},
                             {"coefficient", coeffs[i].str()}});
        grouped[std::to_string(degree)] = entry;
    }

    Classification result;
    result.method = "degree_grouped_rado";
    for (const auto& [degree, coeffs] : groups) {
        if (auto subset = zero_sum_subset(coeffs)) {
            nlohmann::json vars = nlohmann::json::array();
            for (std::size_t i : *subset) vars.push_back(group_vars.at(degree)[i]);
            result.verdict = Verdict::Open;
            result.certificate = {{"type", "degree_grouped_rado"},
                                  {"groups", grouped},
                                  {"equal_degree_zero_sum", {{"degree", degree},
                                                             {"variables", vars}}}};
            result.notes.push_back(
                "an equal-degree zero-sum subset exists: the necessary condition holds, which is "
                "inconclusive for PR");
            return result;
        }
    }

    result.verdict = Verdict::NotNonTriviallyPR;
    result.certificate = {{"type", "degree_grouped_rado"},
                          {"groups", grouped},
                          {"reason", "no nonempty equal-degree subset of coefficients sums to zero"},
                          {"constant_solutions", int_vector_to_json(P.constant_diagonal().roots)}};
    return result;
}

HomogeneousSubsetReport homogeneous_subset_obstruction(const Polynomial& P) {
    if (P.has_negative_exponent())
        throw std::invalid_argument("homogeneous_subset_obstruction: polynomial mode required");
    if (P.is_zero() || !P.homogeneous_degree())
        throw std::invalid_argument("homogeneous_subset_obstruction: homogeneous polynomial required");

    HomogeneousSubsetReport report;
    for (const auto& [index, coeff] : P.terms()) {
        report.support.push_back(index);
        report.coefficients.push_back(coeff);
    }
    report.zero_sum_subset = zero_sum_subset(report.coefficients);
    return report;
}

nlohmann::json homogeneous_subset_to_json(const HomogeneousSubsetReport& report) {
    nlohmann::json support = nlohmann::json::array();
    for (std::size_t i = 0; i < report.support.size(); ++i)
        support.push_back({{"index", multi_index_to_json(report.support[i])},
                           {"coefficient", report.coefficients[i].str()}});
    nlohmann::json out = {{"type", "homogeneous_subset"},
                          {"support", support},
                          {"certifies_not_pr", report.certifies_not_pr()}};
    if (report.zero_sum_subset) {
        nlohmann::json positions = nlohmann::json::array();
        for (std::size_t i : *report.zero_sum_subset) positions.push_back(i + 1);
        out["zero_sum_subset"] = positions;
    }
    return out;
}

Classification characterize_linear_plus_nonlinear(const Polynomial& P) {
    static const char* kRedirect = "; not in the corollary's scope, use the general pipeline";
    if (P.has_negative_exponent())
        throw std::invalid_argument(
            std::string("characterize_linear_plus_nonlinear: polynomial mode required") + kRedirect);
    if (P.has_constant_term())
        throw std::invalid_argument(
            std::string("characterize_linear_plus_nonlinear: constant term present") + kRedirect);

    // Split off the variables that occur exactly once, linearly and alone.
    std::vector<int> occurrences(P.var_count(), 0);
    std::vector<bool> alone_linear(P.var_count(), true);
    for (const auto& [index, coeff] : P.terms()) {
        (void)coeff;
        auto positions = index.nonzero_positions();
        for (std::size_t v : positions) {
            occurrences[v] += 1;
            if (positions.size() != 1 || index[v] != 1) alone_linear[v] = false;
        }
    }
    std::vector<std::string> linear_vars;
    std::vector<Int> coefficients;
    Polynomial remainder(P.vars(), P.is_laurent());
    for (const auto& [index, coeff] : P.terms()) {
        auto positions = index.nonzero_positions();
        if (positions.size() == 1 && index[positions[0]] == 1 && occurrences[positions[0]] == 1 &&
            alone_linear[positions[0]]) {
            linear_vars.push_back(P.vars()[positions[0]]);
            coefficients.push_back(coeff);
        } else {
            remainder.add_term(index, coeff);
        }
    }

    if (linear_vars.size() < 3)
        throw std::invalid_argument(
            "characterize_linear_plus_nonlinear: needs at least 3 linear variables" +
            std::string(kRedirect));
    auto remainder_vars = remainder.occurring_variables();
    if (remainder.is_zero() || remainder_vars.size() != 1 || remainder.is_linear())
        throw std::invalid_argument(
            "characterize_linear_plus_nonlinear: remainder must be nonlinear and univariate" +
            std::string(kRedirect));

    nlohmann::json coeffs_json = int_vector_to_json(coefficients);
    Classification result;
    result.method = "linear_plus_nonlinear_characterization";
    auto J = rado_condition(coefficients);
    if (J) {
        nlohmann::json witness = nlohmann::json::array();
        for (std::size_t j : *J) witness.push_back(j + 1);
        result.verdict = Verdict::ProvablyPR;
        result.certificate = {{"type", "linear_plus_nonlinear"},
                              {"linear_variables", linear_vars},
                              {"coefficients", coeffs_json},
                              {"remainder", remainder.format()},
                              {"J", witness}};
        RadoDecomposition d{linear_vars, coefficients, remainder, remainder_vars, *J};
        result.injectivity = rado_polynomial_injectivity(d);
        result.notes.push_back("non-trivially PR by the two-sided characterization");
    } else {
        result.verdict = Verdict::NotNonTriviallyPR;
        result.certificate = {{"type", "linear_plus_nonlinear"},
                              {"linear_variables", linear_vars},
                              {"coefficients", coeffs_json},
                              {"remainder", remainder.format()},
                              {"reason", "no nonempty zero-sum subset of the linear coefficients"},
                              {"constant_solutions",
                               int_vector_to_json(P.constant_diagonal().roots)}};
        result.notes.push_back("not non-trivially PR by the two-sided characterization");
    }
    return result;
}

}  // namespace pr

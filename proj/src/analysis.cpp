#include "pr/analysis.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>
#include <utility>

#include "pr/classifier.hpp"
#include "pr/family_f.hpp"
#include "pr/obstruction.hpp"
#include "pr/parser.hpp"
#include "pr/verifier.hpp"

namespace pr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs one stage body with uniform status/error handling. The body either
// fills the StageResult or throws: std::invalid_argument means the equation
// is outside the stage's shape, anything else is a genuine stage error
// (budget exhaustion, internal failure) recorded verbatim.
StageResult run_stage(const std::string& name, const std::set<std::string>& skip,
                      const std::function<void(StageResult&)>& body) {
    StageResult stage;
    stage.name = name;
    if (skip.count(name)) {
        stage.status = StageResult::Status::NotApplicable;
        stage.detail = "skipped by request";
        return stage;
    }
    auto start = Clock::now();
    try {
        body(stage);
    } catch (const std::invalid_argument& e) {
        stage.status = StageResult::Status::NotApplicable;
        stage.detail = e.what();
        stage.result.reset();
    } catch (const std::exception& e) {
        stage.status = StageResult::Status::Error;
        stage.detail = e.what();
        stage.result.reset();
    }
    stage.elapsed_ms = ms_since(start);
    return stage;
}

// Two-term equation c*M1 - c*M2 = 0 is equivalent to the product equation
// prod v_i^{e_i} = 1 with e the exponent difference of the monomials.
struct ProductEquation {
    std::vector<std::string> variables;
    std::vector<Int> exponents;
};

std::optional<ProductEquation> detect_product_equation(const Polynomial& P) {
    if (P.term_count() != 2) return std::nullopt;
    auto it = P.terms().begin();
    const auto& [index_a, coeff_a] = *it;
    ++it;
    const auto& [index_b, coeff_b] = *it;
    if (coeff_a != -coeff_b) return std::nullopt;
    const MultiIndex& pos = coeff_a > 0 ? index_a : index_b;
    const MultiIndex& neg = coeff_a > 0 ? index_b : index_a;

    ProductEquation form;
    for (std::size_t i = 0; i < P.var_count(); ++i) {
        std::int64_t diff = pos[i] - neg[i];
        if (diff == 0) continue;
        form.variables.push_back(P.vars()[i]);
        form.exponents.push_back(diff);
    }
    if (form.exponents.empty()) return std::nullopt;
    return form;
}

bool verdict_definite(Verdict v) { return v != Verdict::Open; }

bool guarantees_two_distinct(const Classification& c) {
    for (const auto& constraint : c.injectivity)
        if (constraint.min_distinct >= 2) return true;
    return false;
}

}  // namespace

std::string to_string(StageResult::Status status) {
    switch (status) {
        case StageResult::Status::Certified: return "certified";
        case StageResult::Status::Inconclusive: return "inconclusive";
        case StageResult::Status::NotApplicable: return "not_applicable";
        case StageResult::Status::Error: return "error";
    }
    return "?";
}

AnalysisReport analyze(const Polynomial& P, const AnalysisOptions& options) {
    if (P.is_zero()) throw std::invalid_argument("analyze: zero polynomial");
    if (P.has_negative_exponent())
        throw std::invalid_argument(
            "analyze: Laurent input; clear denominators or use the product form");
    auto total_start = Clock::now();

    AnalysisReport report;
    report.canonical = format_polynomial(P) + " = 0";
    report.source = report.canonical;
    report.variables = P.vars();

    auto& stages = report.stages;

    stages.push_back(run_stage("classify_linear", options.skip, [&](StageResult& stage) {
        if (!P.is_linear())
            throw std::invalid_argument("the equation is not linear");
        stage.result = classify_linear(P);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("classify_multiplicative", options.skip, [&](StageResult& stage) {
        auto form = detect_product_equation(P);
        if (!form)
            throw std::invalid_argument(
                "the equation is not of the two-term form c*M1 = c*M2 (a product equation)");
        Classification c = classify_multiplicative(form->exponents);
        c.certificate["variables"] = form->variables;
        stage.result = std::move(c);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("rado_polynomial", options.skip, [&](StageResult& stage) {
        auto d = detect_rado_polynomial(P);
        if (!d)
            throw std::invalid_argument(
                "no Rado-polynomial decomposition: needs >= 2 variables occurring once, "
                "linearly and alone, whose coefficients admit a zero-sum subset");
        stage.result = classify_rado_polynomial(P, *d);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("family_f", options.skip, [&](StageResult& stage) {
        auto cert = derive_family_f(P, options.family_depth);
        if (!cert) {
            stage.status = StageResult::Status::Inconclusive;
            stage.detail = "no derivation found within depth " +
                           std::to_string(options.family_depth);
            return;
        }
        stage.result = validate_family_f(P, *cert);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("mod_p_obstruction", options.skip, [&](StageResult& stage) {
        auto hit = find_mod_p_obstruction(P, options.prime_bound);
        if (!hit) {
            stage.status = StageResult::Status::Inconclusive;
            stage.detail = "no obstruction at any prime <= " +
                           std::to_string(options.prime_bound);
            return;
        }
        const ModPObstruction& cert = hit->second;
        Classification c;
        c.method = "mod_p_obstruction";
        c.certificate = mod_p_obstruction_to_json(cert);
        if (cert.constant_solutions.empty()) {
            c.verdict = Verdict::ProvablyNotPR;
            c.notes.push_back("mod-" + std::to_string(cert.p) +
                              " obstruction; the diagonal P(z,...,z) has no positive root, "
                              "so no solutions exist at all");
        } else {
            c.verdict = Verdict::NotNonTriviallyPR;
            std::string roots;
            for (const auto& r : cert.constant_solutions)
                roots += (roots.empty() ? "" : ", ") + r.str();
            c.notes.push_back("mod-" + std::to_string(cert.p) +
                              " obstruction; only constant solutions remain (z = " + roots + ")");
        }
        stage.result = std::move(c);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("maximal_homogeneous", options.skip, [&](StageResult& stage) {
        MaximalHomogeneousReport r = maximal_homogeneous_obstruction(P);
        if (!r.certifies_not_pr()) {
            stage.status = StageResult::Status::Inconclusive;
            stage.detail = "a maximal degree class has a zero-sum coefficient subset";
            stage.evidence = maximal_homogeneous_to_json(r);
            return;
        }
        Classification c;
        c.verdict = Verdict::NotNonTriviallyPR;
        c.method = "maximal_homogeneous_obstruction";
        c.certificate = maximal_homogeneous_to_json(r);
        c.notes.push_back(
            "no maximal degree class has a zero-sum coefficient subset; monochromatic "
            "solutions with >= 2 distinct values are excluded");
        stage.result = std::move(c);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("homogeneous_subset", options.skip, [&](StageResult& stage) {
        HomogeneousSubsetReport r = homogeneous_subset_obstruction(P);
        if (!r.certifies_not_pr()) {
            stage.status = StageResult::Status::Inconclusive;
            stage.detail = "the support has a zero-sum coefficient subset";
            stage.evidence = homogeneous_subset_to_json(r);
            return;
        }
        Classification c;
        c.verdict = Verdict::ProvablyNotPR;
        c.method = "homogeneous_subset_obstruction";
        c.certificate = homogeneous_subset_to_json(r);
        c.notes.push_back(
            "no nonempty subset of the support has coefficients summing to zero; the "
            "equation has no monochromatic solutions under some finite coloring, and no "
            "constant solutions");
        stage.result = std::move(c);
        stage.status = StageResult::Status::Certified;
    }));

    stages.push_back(run_stage("linear_plus_nonlinear", options.skip, [&](StageResult& stage) {
        stage.result = characterize_linear_plus_nonlinear(P);
        stage.status = StageResult::Status::Certified;
    }));

    // Aggregate: strongest verdict wins (ProvablyPR > ProvablyNotPR >
    // NotNonTriviallyPR > Open); the first stage reaching it supplies the
    // certificate. ProvablyNotPR is consistent with NotNonTriviallyPR (it is
    // strictly stronger), so only genuine PR / not-PR clashes are flagged.
    const StageResult* first_pr = nullptr;
    const StageResult* first_not_pr = nullptr;
    const StageResult* first_not_nontrivial = nullptr;
    bool pr_with_two_distinct = false;
    for (const auto& stage : stages) {
        if (stage.status != StageResult::Status::Certified || !stage.result) continue;
        switch (stage.result->verdict) {
            case Verdict::ProvablyPR:
                if (!first_pr) first_pr = &stage;
                pr_with_two_distinct |= guarantees_two_distinct(*stage.result);
                break;
            case Verdict::ProvablyNotPR:
                if (!first_not_pr) first_not_pr = &stage;
                break;
            case Verdict::NotNonTriviallyPR:
                if (!first_not_nontrivial) first_not_nontrivial = &stage;
                break;
            case Verdict::Open:
                break;
        }
    }

    if (first_pr && first_not_pr) {
        report.inconsistent = true;
        report.inconsistency_note = "stage '" + first_pr->name +
                                    "' certifies partition regularity while stage '" +
                                    first_not_pr->name + "' certifies its negation";
    } else if (first_not_nontrivial && pr_with_two_distinct) {
        report.inconsistent = true;
        report.inconsistency_note =
            "stage '" + first_not_nontrivial->name +
            "' excludes monochromatic solutions with >= 2 distinct values while a partition "
            "regularity certificate guarantees them";
    }

    if (report.inconsistent) {
        report.final_result = Classification{};  // Open, no certificate
        report.final_result.method = "aggregate";
        report.final_result.notes.push_back("internal consistency failure: " +
                                            report.inconsistency_note);
    } else if (first_pr) {
        report.final_result = *first_pr->result;
        // Union of the distinctness guarantees established by every PR stage.
        for (const auto& stage : stages) {
            if (&stage == first_pr || stage.status != StageResult::Status::Certified ||
                !stage.result || stage.result->verdict != Verdict::ProvablyPR)
                continue;
            for (const auto& constraint : stage.result->injectivity) {
                bool seen = false;
                for (const auto& have : report.final_result.injectivity)
                    seen |= have == constraint;
                if (!seen) report.final_result.injectivity.push_back(constraint);
            }
        }
    } else if (first_not_pr) {
        report.final_result = *first_not_pr->result;
    } else if (first_not_nontrivial) {
        report.final_result = *first_not_nontrivial->result;
    } else {
        report.final_result = Classification{};
        report.final_result.method = "aggregate";
        report.final_result.notes.push_back(
            "every applicable analysis was inconclusive; partition regularity is "
            "semi-decidable, so absence of a certificate is not a verdict");
    }

    if (options.verifier_evidence && !report.inconsistent &&
        !verdict_definite(report.final_result.verdict)) {
        stages.push_back(run_stage("verifier_evidence", options.skip, [&](StageResult& stage) {
            ColoringProblem problem;
            problem.P = P;
            problem.N = 32;
            problem.r = 2;
            problem.mode = ColoringMode::NonTrivial;
            SearchOutcome outcome = search_coloring(problem, options.coloring_node_budget);
            stage.status = StageResult::Status::Inconclusive;
            stage.detail = "empirical coloring search (never a verdict): " + to_string(outcome.kind);
            stage.evidence = search_outcome_to_json(outcome);
            stage.evidence["N"] = problem.N;
            stage.evidence["r"] = problem.r;
            stage.evidence["mode"] = to_string(problem.mode);
        }));
    }

    report.elapsed_ms = ms_since(total_start);
    return report;
}

AnalysisReport analyze_text(const std::string& equation, const AnalysisOptions& options) {
    // Literal product shape with negative exponents ("x^2 * y^-3 = 1") never
    // parses as a polynomial equation; route it straight to the
    // multiplicative classifier.
    if (auto form = parse_product_form(equation)) {
        bool laurent = false;
        for (const auto& e : form->exponents) laurent |= e < 0;
        if (laurent) {
            auto total_start = Clock::now();
            AnalysisReport report;
            report.source = equation;
            std::string canonical;
            for (std::size_t i = 0; i < form->variables.size(); ++i) {
                if (i) canonical += "*";
                canonical += form->variables[i];
                if (form->exponents[i] != 1)
                    canonical += "^" + form->exponents[i].str();
            }
            report.canonical = canonical + " = 1";
            report.variables = form->variables;
            report.stages.push_back(
                run_stage("classify_multiplicative", options.skip, [&](StageResult& stage) {
                    Classification c = classify_multiplicative(form->exponents);
                    c.certificate["variables"] = form->variables;
                    stage.result = std::move(c);
                    stage.status = StageResult::Status::Certified;
                }));
            const auto& stage = report.stages.back();
            if (stage.status == StageResult::Status::Certified && stage.result) {
                report.final_result = *stage.result;
            } else {
                report.final_result.method = "aggregate";
                report.final_result.notes.push_back("the multiplicative classifier was skipped");
            }
            report.elapsed_ms = ms_since(total_start);
            return report;
        }
    }
    Equation eq = [&] {
        try {
            return parse_equation(equation);
        } catch (const ParseError& e) {
            throw std::invalid_argument(e.what());
        }
    }();
    AnalysisReport report = analyze(eq.normalized, options);
    report.source = equation;
    return report;
}

nlohmann::json analysis_report_to_json(const AnalysisReport& report, bool stable_timing) {
    nlohmann::json j;
    j["source"] = report.source;
    j["canonical"] = report.canonical;
    j["variables"] = report.variables;

    nlohmann::json stages = nlohmann::json::array();
    for (const auto& stage : report.stages) {
        nlohmann::json s;
        s["name"] = stage.name;
        s["status"] = to_string(stage.status);
        if (!stage.detail.empty()) s["detail"] = stage.detail;
        if (stage.result) s["result"] = classification_to_json(*stage.result, report.variables);
        if (!stage.evidence.is_null()) s["evidence"] = stage.evidence;
        s["elapsed_ms"] = stable_timing ? 0.0 : stage.elapsed_ms;
        stages.push_back(std::move(s));
    }
    j["stages"] = std::move(stages);
    j["final"] = classification_to_json(report.final_result, report.variables);
    j["inconsistent"] = report.inconsistent;
    if (report.inconsistent) j["inconsistency_note"] = report.inconsistency_note;
    j["elapsed_ms"] = stable_timing ? 0.0 : report.elapsed_ms;
    return j;
}

}  // namespace pr

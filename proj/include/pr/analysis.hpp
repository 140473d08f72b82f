#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pr/classification.hpp"
#include "pr/polynomial.hpp"

namespace pr {

// One pipeline stage's contribution to a report.
struct StageResult {
    std::string name;
    enum class Status {
        Certified,      // produced a definite verdict with a certificate
        Inconclusive,   // ran, but decided nothing (evidence may be recorded)
        NotApplicable,  // the equation is outside the stage's shape
        Error,          // resource limit or internal failure, recorded verbatim
    };
    Status status = Status::NotApplicable;
    std::optional<Classification> result;  // present when Certified
    nlohmann::json evidence;               // inconclusive-side payload, may be null
    std::string detail;                    // reason for the status
    double elapsed_ms = 0.0;
};

std::string to_string(StageResult::Status status);

struct AnalysisOptions {
    int family_depth = 4;                          // derive_family_f depth budget
    std::int64_t prime_bound = 1000;               // mod-p obstruction search bound
    std::int64_t coloring_node_budget = 100'000'000;  // verifier evidence budget
    bool verifier_evidence = false;  // append coloring-search evidence to Open verdicts
    std::set<std::string> skip;      // stage names to bypass
};

// Full pipeline result. `final` never upgrades Open without a stage
// certificate; conflicting definite verdicts set `inconsistent` instead of a
// final verdict and callers must treat the report as a defect signal.
struct AnalysisReport {
    std::string source;
    std::string canonical;  // "<format> = 0"
    std::vector<std::string> variables;
    std::vector<StageResult> stages;
    Classification final_result;
    bool inconsistent = false;
    std::string inconsistency_note;
    double elapsed_ms = 0.0;
};

// Fixed stage order: classify_linear, classify_multiplicative,
// rado_polynomial, family_f, mod_p_obstruction, maximal_homogeneous,
// homogeneous_subset, linear_plus_nonlinear, then optional verifier evidence.
AnalysisReport analyze(const Polynomial& P, const AnalysisOptions& options = {});

// Parses the equation text ("lhs = rhs", or a product form like
// "x^2*y^-3 = 1") first; parse errors propagate as std::invalid_argument.
AnalysisReport analyze_text(const std::string& equation, const AnalysisOptions& options = {});

// stable_timing zeroes every elapsed_ms field so identical inputs yield
// byte-identical reports.
nlohmann::json analysis_report_to_json(const AnalysisReport& report, bool stable_timing = false);

}  // namespace pr

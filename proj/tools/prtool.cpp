#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pr/analysis.hpp"
#include "pr/dimacs.hpp"
#include "pr/ip_structures.hpp"
#include "pr/parser.hpp"
#include "pr/verifier.hpp"

namespace {

using nlohmann::json;

constexpr int kExitDefinite = 0;
constexpr int kExitError = 1;
constexpr int kExitOpen = 2;
constexpr int kExitInconsistent = 3;

struct OutputOptions {
    std::string format = "json";
    bool stable = false;
};

void emit(const json& j, const OutputOptions& out, const std::string& text_summary) {
    if (out.format == "text")
        std::cout << text_summary;
    else
        std::cout << j.dump(2) << "\n";
}

pr::ColoringMode parse_mode(const std::string& name) {
    if (name == "any") return pr::ColoringMode::Any;
    if (name == "non-trivial") return pr::ColoringMode::NonTrivial;
    if (name == "exclude-constant") return pr::ColoringMode::ExcludeConstant;
    if (name == "injective" || name == "injectivity") return pr::ColoringMode::Injectivity;
    throw CLI::ValidationError("--mode", "unknown mode '" + name + "'");
}

std::vector<pr::Int> parse_int_list(const std::string& text) {
    std::vector<pr::Int> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        auto first = token.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        auto last = token.find_last_not_of(" \t");
        values.emplace_back(token.substr(first, last - first + 1));
    }
    return values;
}

std::vector<std::int64_t> load_set(const std::string& inline_list, const std::string& file) {
    std::vector<std::int64_t> a;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open set file: " + file);
        std::int64_t v;
        while (in >> v) a.push_back(v);
    } else {
        for (const auto& v : parse_int_list(inline_list))
            a.push_back(v.convert_to<std::int64_t>());
    }
    return a;
}

json generators_to_json(const pr::GeneratorSequence& g) {
    json arr = json::array();
    for (const auto& v : g.generators) arr.push_back(v.str());
    return arr;
}

int run_classify(const std::string& equation, const pr::AnalysisOptions& options,
                 const OutputOptions& out) {
    pr::AnalysisReport report = pr::analyze_text(equation, options);
    std::ostringstream text;
    text << report.canonical << "\n";
    for (const auto& stage : report.stages) {
        text << "  " << stage.name << ": " << pr::to_string(stage.status);
        if (stage.result) text << " -> " << pr::to_string(stage.result->verdict);
        if (!stage.detail.empty()) text << " (" << stage.detail << ")";
        text << "\n";
    }
    text << "final: " << pr::to_string(report.final_result.verdict);
    if (!report.final_result.method.empty() && report.final_result.method != "aggregate")
        text << " via " << report.final_result.method;
    text << "\n";
    for (const auto& note : report.final_result.notes) text << "note: " << note << "\n";
    if (report.inconsistent) text << "INCONSISTENT: " << report.inconsistency_note << "\n";
    emit(pr::analysis_report_to_json(report, out.stable), out, text.str());
    if (report.inconsistent) return kExitInconsistent;
    return report.final_result.verdict == pr::Verdict::Open ? kExitOpen : kExitDefinite;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition-regularity analysis of Diophantine equations"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--format", out.format, "Output format: json (default) or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag(
        "--stable", out.stable,
        "Zero all elapsed-time fields so identical inputs give byte-identical reports");

    std::string equation;

    // ---- classify ----
    auto* classify = app.add_subcommand("classify", "Run the full analysis pipeline");
    pr::AnalysisOptions analysis_options;
    std::vector<std::string> skip_stages;
    bool evidence = false;
    classify->add_option("equation", equation, "Equation text, e.g. \"x + y = z^2\"")
        ->required();
    classify->add_option("--depth", analysis_options.family_depth,
                         "Derivation search depth for the closure family (default 4)");
    classify->add_option("--prime-bound", analysis_options.prime_bound,
                         "Largest prime tried for the mod-p obstruction (default 1000)");
    classify->add_option("--budget", analysis_options.coloring_node_budget,
                         "Node budget for the optional coloring evidence (default 1e8)");
    classify->add_option("--skip", skip_stages, "Stage name to skip (repeatable)");
    classify->add_flag("--evidence", evidence,
                       "Append an empirical coloring search when the verdict is Open");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Coloring search / thresholds / coloring checks");
    std::int64_t N = 64;
    int r = 2;
    std::string mode_name = "any";
    std::uint64_t node_budget = 100'000'000;
    std::int64_t tuple_budget = 1'000'000'000;
    bool rado_number_flag = false;
    std::int64_t n_max = 64;
    std::string coloring_spec;
    verify->add_option("equation", equation, "Equation text")->required();
    verify->add_option("-N,--elements", N, "Color the interval [1..N] (default 64)");
    verify->add_option("-r,--colors", r, "Number of colors (default 2)");
    verify->add_option("--mode", mode_name,
                       "Solution filter: any, non-trivial, exclude-constant, injective");
    verify->add_option("--budget", node_budget, "Search node budget (default 1e8)");
    verify->add_option("--tuple-budget", tuple_budget,
                       "Enumeration tuple-estimate budget (default 1e9)");
    verify->add_flag("--rado-number", rado_number_flag,
                     "Find the least N forcing a monochromatic solution");
    verify->add_option("--n-max", n_max, "Upper bound for --rado-number (default 64)");
    verify->add_option("--coloring", coloring_spec,
                       "Check a named coloring instead of searching: valuation<base>");

    // ---- dimacs ----
    auto* dimacs = app.add_subcommand("dimacs", "Export the coloring problem as DIMACS CNF");
    std::string out_path;
    dimacs->add_option("equation", equation, "Equation text")->required();
    dimacs->add_option("-N,--elements", N, "Interval [1..N]")->required();
    dimacs->add_option("-r,--colors", r, "Number of colors (default 2)");
    dimacs->add_option("--mode", mode_name,
                       "Solution filter: any, non-trivial, exclude-constant, injective");
    dimacs->add_option("--tuple-budget", tuple_budget,
                       "Enumeration tuple-estimate budget (default 1e9)");
    dimacs->add_option("-o,--output", out_path, "Output path for the CNF")->required();

    // ---- ip ----
    auto* ip = app.add_subcommand("ip", "Finite sums/products, sub-IP extraction, densities");
    std::string generators_text, set_text, set_file;
    std::size_t k = 0;
    bool sums = false, products = false, injective_sub = false, density = false;
    std::size_t ip_large_k = 0;
    std::int64_t ip_N = 0, window = 0;
    ip->add_option("--generators", generators_text, "Comma-separated generator list");
    ip->add_flag("--sums", sums, "Finite sums FS of the first k generators");
    ip->add_flag("--products", products, "Finite products FP of the first k generators");
    ip->add_option("-k", k, "How many generators to combine");
    ip->add_flag("--injective-sub", injective_sub,
                 "Greedy distinct-sums subsequence of the generators");
    ip->add_option("--set", set_text, "Comma-separated set A (sorted positive integers)");
    ip->add_option("--set-file", set_file, "Whitespace-separated set A from a file");
    ip->add_option("--ip-large", ip_large_k,
                   "Search a k-generator finite-sums structure inside A");
    ip->add_option("-N,--elements", ip_N, "Ambient scale [1..N]");
    ip->add_flag("--density", density, "Density of A in [1..N]");
    ip->add_option("--window", window, "Best window density of A at window length n");

    // ---- parse ----
    auto* parse = app.add_subcommand("parse", "Parse and normalize an equation");
    bool laurent = false;
    parse->add_option("equation", equation, "Equation text")->required();
    parse->add_flag("--laurent", laurent, "Accept negative exponents");

    for (auto* sub : {classify, verify, dimacs, ip, parse}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*classify) {
            analysis_options.verifier_evidence = evidence;
            analysis_options.skip.insert(skip_stages.begin(), skip_stages.end());
            return run_classify(equation, analysis_options, out);
        }

        if (*verify) {
            pr::ColoringMode mode = parse_mode(mode_name);
            pr::Equation eq = pr::parse_equation(equation);
            pr::EnumerationOptions enum_options{tuple_budget};

            if (!coloring_spec.empty()) {
                if (coloring_spec.rfind("valuation", 0) != 0)
                    throw std::runtime_error("unknown coloring '" + coloring_spec +
                                             "' (expected valuation<base>)");
                std::int64_t base = std::stoll(coloring_spec.substr(9));
                auto coloring = pr::valuation_parity_coloring(N, base);
                auto hit = pr::check_coloring(eq.normalized, coloring, mode, {}, enum_options);
                json j{{"equation", eq.normalized.format() + " = 0"},
                       {"coloring", coloring_spec},
                       {"N", N},
                       {"mode", pr::to_string(mode)}};
                std::ostringstream text;
                if (hit) {
                    j["monochromatic_solution"] = *hit;
                    text << "monochromatic solution:";
                    for (auto v : *hit) text << " " << v;
                    text << "\n";
                } else {
                    j["monochromatic_solution"] = nullptr;
                    text << "no monochromatic solution under " << coloring_spec << " on [1.." << N
                         << "]\n";
                }
                emit(j, out, text.str());
                return kExitDefinite;
            }

            if (rado_number_flag) {
                auto result = pr::rado_number(eq.normalized, r, mode, n_max, node_budget);
                json j = pr::rado_number_to_json(result);
                j["equation"] = eq.normalized.format() + " = 0";
                j["r"] = r;
                j["mode"] = pr::to_string(mode);
                std::ostringstream text;
                if (result.kind == pr::RadoNumberResult::Kind::Found)
                    text << "rado_number = " << result.value << "\n";
                else
                    text << "no forced N <= " << n_max << " (lower bound " << result.value
                         << ")\n";
                emit(j, out, text.str());
                return result.kind == pr::RadoNumberResult::Kind::Found ? kExitDefinite
                                                                        : kExitOpen;
            }

            pr::ColoringProblem problem;
            problem.P = eq.normalized;
            problem.N = N;
            problem.r = r;
            problem.mode = mode;
            auto outcome = pr::search_coloring(problem, node_budget);
            json j = pr::search_outcome_to_json(outcome);
            if (out.stable) j["elapsed_ms"] = 0.0;
            j["equation"] = eq.normalized.format() + " = 0";
            j["N"] = N;
            j["r"] = r;
            j["mode"] = pr::to_string(mode);
            std::ostringstream text;
            text << pr::to_string(outcome.kind) << " (N=" << N << ", r=" << r << ", "
                 << outcome.solution_count << " solution tuples)\n";
            emit(j, out, text.str());
            return outcome.kind == pr::SearchOutcome::Kind::BudgetExhausted ? kExitOpen
                                                                            : kExitDefinite;
        }

        if (*dimacs) {
            pr::ColoringMode mode = parse_mode(mode_name);
            pr::Equation eq = pr::parse_equation(equation);
            pr::ColoringProblem problem;
            problem.P = eq.normalized;
            problem.N = N;
            problem.r = r;
            problem.mode = mode;
            std::string cnf = pr::export_dimacs(problem, pr::EnumerationOptions{tuple_budget});
            std::ofstream file(out_path);
            if (!file) throw std::runtime_error("cannot write " + out_path);
            file << cnf;
            file.close();
            auto doc = pr::parse_dimacs(cnf);
            json j{{"path", out_path},
                   {"variables", doc.variable_count},
                   {"clauses", static_cast<std::int64_t>(doc.clauses.size())}};
            std::ostringstream text;
            text << "wrote " << out_path << ": " << doc.variable_count << " variables, "
                 << doc.clauses.size() << " clauses\n";
            emit(j, out, text.str());
            return kExitDefinite;
        }

        if (*ip) {
            json j;
            std::ostringstream text;
            if (sums || products || injective_sub) {
                if (generators_text.empty())
                    throw std::runtime_error("--generators is required for this operation");
                pr::GeneratorSequence g{parse_int_list(generators_text)};
                if (injective_sub) {
                    auto sub = pr::injective_sub_ip(g);
                    j["injective_subsequence"] = generators_to_json(sub);
                    text << "injective subsequence size " << sub.generators.size() << "\n";
                } else {
                    if (k == 0) throw std::runtime_error("-k is required for --sums/--products");
                    auto values = sums ? pr::finite_sums(g, k) : pr::finite_products(g, k);
                    json arr = json::array();
                    for (const auto& v : values) arr.push_back(v.str());
                    j[sums ? "finite_sums" : "finite_products"] = arr;
                    j["count"] = values.size();
                    text << values.size() << " values\n";
                }
            } else if (ip_large_k > 0) {
                auto a = load_set(set_text, set_file);
                if (ip_N == 0 && !a.empty()) ip_N = a.back();
                auto found = pr::is_ip_large_at_scale(a, ip_large_k, ip_N);
                if (found) {
                    j["generators"] = generators_to_json(*found);
                    text << "found " << ip_large_k << "-generator finite-sums structure\n";
                } else {
                    j["generators"] = nullptr;
                    text << "no " << ip_large_k << "-generator structure up to N=" << ip_N
                         << "\n";
                }
            } else if (density || window > 0) {
                auto a = load_set(set_text, set_file);
                if (ip_N == 0)
                    throw std::runtime_error("-N is required for density statistics");
                if (window > 0) {
                    auto d = pr::banach_density_window(a, ip_N, window);
                    j["banach_density_window"] = d.str();
                    j["window"] = window;
                    text << "window density " << d.str() << "\n";
                } else {
                    auto d = pr::upper_density_window(a, ip_N);
                    j["density"] = d.str();
                    text << "density " << d.str() << "\n";
                }
                j["N"] = ip_N;
            } else {
                throw std::runtime_error(
                    "choose an operation: --sums/--products/--injective-sub/--ip-large/"
                    "--density/--window");
            }
            emit(j, out, text.str());
            return kExitDefinite;
        }

        if (*parse) {
            pr::Equation eq = pr::parse_equation(equation, pr::ParseOptions{laurent});
            const pr::Polynomial& P = eq.normalized;
            json terms = json::array();
            for (const auto& [index, coeff] : P.terms())
                terms.push_back({{"exponents", index.exps}, {"coefficient", coeff.str()}});
            json j{{"source", equation},
                   {"lhs", eq.lhs_text},
                   {"rhs", eq.rhs_text},
                   {"canonical", P.format() + " = 0"},
                   {"variables", P.vars()},
                   {"constant_term_present", eq.constant_term_present},
                   {"terms", terms},
                   {"structure",
                    {{"linear", P.is_linear()},
                     {"total_degree", P.total_degree()},
                     {"term_count", P.term_count()}}}};
            if (auto d = P.homogeneous_degree()) j["structure"]["homogeneous_degree"] = *d;
            std::ostringstream text;
            text << P.format() << " = 0\n";
            emit(j, out, text.str());
            return kExitDefinite;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

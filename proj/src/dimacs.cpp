#include "pr/dimacs.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pr {

std::string export_dimacs(const ColoringProblem& problem, const EnumerationOptions& options) {
    if (problem.N < 1) throw std::invalid_argument("export_dimacs: N must be >= 1");
    if (problem.r < 1) throw std::invalid_argument("export_dimacs: r must be >= 1");
    auto solutions =
        enumerate_solutions(problem.P, problem.N, problem.mode, problem.injectivity, options);
    std::set<std::vector<std::int64_t>> blocks;
    for (const auto& tuple : solutions) {
        std::vector<std::int64_t> s(tuple);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        blocks.insert(std::move(s));
    }

    std::int64_t N = problem.N;
    int r = problem.r;
    auto var = [r](std::int64_t element, int color) {
        return (element - 1) * r + color + 1;  // color 0-based in, 1-based DIMACS out
    };
    std::int64_t variables = N * r;
    std::int64_t clauses = N + N * (std::int64_t(r) * (r - 1) / 2) +
                           static_cast<std::int64_t>(blocks.size()) * r;

    std::ostringstream out;
    out << "c equation: " << problem.P.format() << " = 0\n";
    out << "c N: " << N << " r: " << r << " mode: " << to_string(problem.mode) << "\n";
    out << "c solution value sets: " << blocks.size() << "\n";
    out << "c var(n,c) = (n-1)*r + c for n in [1.." << N << "], c in [1.." << r << "]\n";
    out << "p cnf " << variables << " " << clauses << "\n";
    for (std::int64_t n = 1; n <= N; ++n) {
        for (int c = 0; c < r; ++c) out << var(n, c) << " ";
        out << "0\n";
    }
    for (std::int64_t n = 1; n <= N; ++n)
        for (int c1 = 0; c1 < r; ++c1)
            for (int c2 = c1 + 1; c2 < r; ++c2)
                out << -var(n, c1) << " " << -var(n, c2) << " 0\n";
    for (const auto& block : blocks)
        for (int c = 0; c < r; ++c) {
            for (std::int64_t e : block) out << -var(e, c) << " ";
            out << "0\n";
        }
    return out.str();
}

DimacsDocument parse_dimacs(const std::string& text) {
    DimacsDocument doc;
    std::istringstream in(text);
    std::string line;
    std::int64_t declared_clauses = -1;
    bool header_seen = false;
    std::vector<std::int64_t> current;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c') {
            doc.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2)
                                                                     : line.substr(1));
            continue;
        }
        if (line[0] == 'p') {
            if (header_seen) throw std::invalid_argument("parse_dimacs: duplicate header");
            std::istringstream h(line);
            std::string p, cnf;
            if (!(h >> p >> cnf >> doc.variable_count >> declared_clauses) || cnf != "cnf")
                throw std::invalid_argument("parse_dimacs: malformed 'p cnf V C' header");
            if (doc.variable_count < 0 || declared_clauses < 0)
                throw std::invalid_argument("parse_dimacs: negative header counts");
            header_seen = true;
            continue;
        }
        if (!header_seen)
            throw std::invalid_argument("parse_dimacs: clause before 'p cnf' header");
        std::istringstream cl(line);
        std::int64_t lit;
        while (cl >> lit) {
            if (lit == 0) {
                doc.clauses.push_back(current);
                current.clear();
            } else {
                std::int64_t v = lit < 0 ? -lit : lit;
                if (v > doc.variable_count)
                    throw std::invalid_argument("parse_dimacs: literal out of range: " +
                                                std::to_string(lit));
                current.push_back(lit);
            }
        }
        if (!cl.eof())
            throw std::invalid_argument("parse_dimacs: non-integer token in clause line");
    }
    if (!header_seen) throw std::invalid_argument("parse_dimacs: missing 'p cnf' header");
    if (!current.empty())
        throw std::invalid_argument("parse_dimacs: last clause not 0-terminated");
    if (static_cast<std::int64_t>(doc.clauses.size()) != declared_clauses)
        throw std::invalid_argument(
            "parse_dimacs: clause count mismatch: header says " +
            std::to_string(declared_clauses) + ", found " + std::to_string(doc.clauses.size()));
    return doc;
}

namespace {

// 0 = unassigned, 1 = true, -1 = false.
struct DpllState {
    std::vector<int> value;
    const std::vector<std::vector<std::int64_t>>* clauses;
    std::uint64_t nodes = 0;
    std::uint64_t budget;
};

bool literal_true(const DpllState& s, std::int64_t lit) {
    int v = s.value[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
    return lit > 0 ? v == 1 : v == -1;
}

bool literal_false(const DpllState& s, std::int64_t lit) {
    int v = s.value[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
    return lit > 0 ? v == -1 : v == 1;
}

// Repeatedly applies unit propagation; false on an empty clause. trail
// records assignments made here for backtracking.
bool propagate(DpllState& s, std::vector<std::int64_t>& trail) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& clause : *s.clauses) {
            std::int64_t unit = 0;
            bool satisfied = false;
            int unassigned = 0;
            for (std::int64_t lit : clause) {
                if (literal_true(s, lit)) {
                    satisfied = true;
                    break;
                }
                if (!literal_false(s, lit)) {
                    ++unassigned;
                    unit = lit;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) return false;
            if (unassigned == 1) {
                s.value[static_cast<std::size_t>(unit < 0 ? -unit : unit)] = unit > 0 ? 1 : -1;
                trail.push_back(unit);
                changed = true;
            }
        }
    }
    return true;
}

bool dpll(DpllState& s) {
    if (++s.nodes > s.budget) throw std::runtime_error("solve_dimacs: node budget exhausted");
    std::vector<std::int64_t> trail;
    if (!propagate(s, trail)) {
        for (std::int64_t lit : trail) s.value[static_cast<std::size_t>(lit < 0 ? -lit : lit)] = 0;
        return false;
    }
    std::size_t branch = 0;
    for (std::size_t v = 1; v < s.value.size(); ++v)
        if (s.value[v] == 0) {
            branch = v;
            break;
        }
    if (branch == 0) return true;  // all assigned, all clauses satisfied
    for (int choice : {1, -1}) {
        s.value[branch] = choice;
        if (dpll(s)) return true;
        s.value[branch] = 0;
    }
    for (std::int64_t lit : trail) s.value[static_cast<std::size_t>(lit < 0 ? -lit : lit)] = 0;
    return false;
}

}  // namespace

std::optional<std::vector<bool>> solve_dimacs(const DimacsDocument& doc,
                                              std::uint64_t node_budget) {
    for (const auto& clause : doc.clauses)
        if (clause.empty()) return std::nullopt;
    DpllState s;
    s.value.assign(static_cast<std::size_t>(doc.variable_count) + 1, 0);
    s.clauses = &doc.clauses;
    s.budget = node_budget;
    if (!dpll(s)) return std::nullopt;
    std::vector<bool> assignment(s.value.size(), false);
    for (std::size_t v = 1; v < s.value.size(); ++v) assignment[v] = s.value[v] == 1;
    return assignment;
}

Coloring assignment_to_coloring(const std::vector<bool>& assignment, std::int64_t N, int r) {
    if (N < 1 || r < 1) throw std::invalid_argument("assignment_to_coloring: bad N or r");
    if (assignment.size() < static_cast<std::size_t>(N * r) + 1)
        throw std::invalid_argument("assignment_to_coloring: assignment too short");
    Coloring coloring(static_cast<std::size_t>(N), -1);
    for (std::int64_t n = 1; n <= N; ++n) {
        for (int c = 0; c < r; ++c) {
            if (!assignment[static_cast<std::size_t>((n - 1) * r + c + 1)]) continue;
            if (coloring[n - 1] != -1)
                throw std::invalid_argument("assignment_to_coloring: element " +
                                            std::to_string(n) + " has two colors");
            coloring[n - 1] = c;
        }
        if (coloring[n - 1] == -1)
            throw std::invalid_argument("assignment_to_coloring: element " + std::to_string(n) +
                                        " has no color");
    }
    return coloring;
}

}  // namespace pr

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pr/verifier.hpp"

namespace pr {

// DIMACS CNF whose satisfying assignments are exactly the qualifying
// colorings: variables v(n,c) = (n-1)*r + c; at-least-one and pairwise
// at-most-one color per element; one clause per color per distinct solution
// value set. UNSAT <=> search_coloring reports Forced.
std::string export_dimacs(const ColoringProblem& problem,
                          const EnumerationOptions& options = {});

// CNF as plain clause lists (re-parsed constraint representation).
struct DimacsDocument {
    std::int64_t variable_count = 0;
    std::vector<std::vector<std::int64_t>> clauses;  // signed 1-based literals
    std::vector<std::string> comments;               // "c " lines, prefix stripped
};

// Strict parser: requires a "p cnf V C" header, every literal in [-V, V],
// clauses 0-terminated, and exactly C clauses (std::invalid_argument
// otherwise).
DimacsDocument parse_dimacs(const std::string& text);

// Reference DPLL satisfiability check (unit propagation + first-unassigned
// branching). Returns a satisfying assignment (1-based index, entry v = value
// of variable v) or nullopt when unsatisfiable. Throws std::runtime_error
// when node_budget decisions are exhausted.
std::optional<std::vector<bool>> solve_dimacs(const DimacsDocument& doc,
                                              std::uint64_t node_budget = 50'000'000);

// Decodes a satisfying assignment of an exported CNF back into the coloring
// it encodes (element n has color c iff variable (n-1)*r + c + 1 is true).
// Requires exactly one true color per element (std::invalid_argument).
Coloring assignment_to_coloring(const std::vector<bool>& assignment, std::int64_t N, int r);

}  // namespace pr

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pr/classification.hpp"
#include "pr/polynomial.hpp"

namespace pr {

// How solution tuples are filtered before coloring constraints are built.
//   Any             - every root in [1..N]^n counts.
//   NonTrivial      - at least two distinct values among all variables.
//   Injectivity     - every listed constraint holds (>= min_distinct distinct
//                     values among its variables).
//   ExcludeConstant - drop fully-constant tuples. For a single tuple this
//                     coincides with NonTrivial (constant == one distinct
//                     value); both names are kept because certificates phrase
//                     the exclusion both ways.
enum class ColoringMode { Any, NonTrivial, Injectivity, ExcludeConstant };

std::string to_string(ColoringMode mode);

struct ColoringProblem {
    Polynomial P;
    std::int64_t N = 1;
    int r = 1;
    ColoringMode mode = ColoringMode::Any;
    std::vector<InjectivityConstraint> injectivity;  // used when mode == Injectivity
};

// coloring[i] is the color of element i+1; colors are 0-based.
using Coloring = std::vector<int>;

struct EnumerationOptions {
    // Upper bound on N^n before pruning; exceeding it throws std::length_error
    // carrying the estimate.
    std::int64_t tuple_estimate_budget = 1'000'000'000;
};

// All roots of P in [1..N]^n (assignment order = P.vars()), filtered by mode,
// in ascending lexicographic order. Backtracking with interval pruning: a
// partial assignment is abandoned as soon as the attainable value range of P
// excludes zero. Requires polynomial mode and that every declared variable
// occurs in P.
std::vector<std::vector<std::int64_t>> enumerate_solutions(
    const Polynomial& P, std::int64_t N, ColoringMode mode = ColoringMode::Any,
    const std::vector<InjectivityConstraint>& injectivity = {},
    const EnumerationOptions& options = {});

struct SearchOutcome {
    enum class Kind { ColoringFound, Forced, BudgetExhausted };
    Kind kind = Kind::BudgetExhausted;
    std::optional<Coloring> coloring;  // present iff kind == ColoringFound
    std::int64_t nodes_explored = 0;
    std::int64_t solution_count = 0;  // distinct value sets constrained
    double elapsed_ms = 0.0;
};

std::string to_string(SearchOutcome::Kind kind);
nlohmann::json search_outcome_to_json(const SearchOutcome& outcome);

// Searches for an r-coloring of [1..N] with no monochromatic solution (under
// the problem's mode). Elements are colored in increasing order with
// per-solution color counters for propagation; symmetry breaking fixes the
// color of element 1 and introduces new colors in ascending order, so the
// outcome kind is exact: ColoringFound witnesses are re-checked before being
// returned and Forced means no qualifying coloring exists. The budget is
// counted in search-tree nodes.
SearchOutcome search_coloring(const ColoringProblem& problem,
                              std::int64_t node_budget = 100'000'000);

struct RadoNumberResult {
    enum class Kind { Found, LowerBound };
    Kind kind = Kind::LowerBound;
    // Found: smallest N with every r-coloring of [1..N] containing a
    // monochromatic solution. LowerBound: no such N <= N_max.
    std::int64_t value = 0;
    std::int64_t nodes_explored = 0;  // summed over all N tried
};

nlohmann::json rado_number_to_json(const RadoNumberResult& result);

// Threshold search over search_coloring, incrementally extending the solution
// set as N grows. Throws std::runtime_error if the node budget is exhausted
// at some N before the threshold is decided.
RadoNumberResult rado_number(const Polynomial& P, int r,
                             ColoringMode mode = ColoringMode::Any,
                             std::int64_t N_max = 64,
                             std::int64_t node_budget = 100'000'000);

// First monochromatic solution of P in [1..N]^n under the coloring (N =
// coloring.size()), or absent. Colorings must be total (every entry >= 0).
// Two-term multilinear product equations (c1*x1...xk = c2*y1...ym, disjoint
// variables, k,m <= 2) are decided by per-color product tables when plain
// enumeration would exceed the tuple budget, in which case the witness is a
// monochromatic solution but not necessarily the lexicographically first.
std::optional<std::vector<std::int64_t>> check_coloring(
    const Polynomial& P, const Coloring& coloring,
    ColoringMode mode = ColoringMode::Any,
    const std::vector<InjectivityConstraint>& injectivity = {},
    const EnumerationOptions& options = {});

// Element n gets color 0/1 by the parity of its base-adic valuation
// (even/odd). base < 2 or N < 1 is an error.
Coloring valuation_parity_coloring(std::int64_t N, std::int64_t base = 2);

}  // namespace pr

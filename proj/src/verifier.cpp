#include "pr/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pr {

namespace {

std::int64_t tuple_estimate(std::int64_t N, std::size_t n, std::int64_t cap) {
    std::int64_t est = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (est > cap / N + 1) return cap + 1;
        est *= N;
        if (est > cap) return cap + 1;
    }
    return est;
}

// Injectivity constraints resolved to variable positions.
std::vector<std::pair<std::vector<std::size_t>, std::size_t>> resolve_injectivity(
    const Polynomial& P, const std::vector<InjectivityConstraint>& constraints) {
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> resolved;
    const auto& vars = P.vars();
    for (const auto& c : constraints) {
        std::vector<std::size_t> positions;
        for (const auto& name : c.variables) {
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end())
                throw std::invalid_argument("injectivity constraint references unknown variable '" +
                                            name + "'");
            positions.push_back(static_cast<std::size_t>(it - vars.begin()));
        }
        resolved.push_back({std::move(positions), c.min_distinct});
    }
    return resolved;
}

std::size_t distinct_count(const std::vector<std::int64_t>& tuple,
                           const std::vector<std::size_t>& positions) {
    std::set<std::int64_t> values;
    for (std::size_t p : positions) values.insert(tuple[p]);
    return values.size();
}

bool passes_mode(const std::vector<std::int64_t>& tuple, ColoringMode mode,
                 const std::vector<std::pair<std::vector<std::size_t>, std::size_t>>& injectivity) {
    switch (mode) {
        case ColoringMode::Any:
            return true;
        case ColoringMode::NonTrivial:
        case ColoringMode::ExcludeConstant: {
            // both exclude exactly the fully-constant tuples
            for (std::size_t i = 1; i < tuple.size(); ++i)
                if (tuple[i] != tuple[0]) return true;
            return tuple.empty();
        }
        case ColoringMode::Injectivity: {
            for (const auto& [positions, min_distinct] : injectivity)
                if (distinct_count(tuple, positions) < min_distinct) return false;
            return true;
        }
    }
    return true;
}

// Backtracking enumerator over per-variable integer boxes with interval
// pruning. Works in int64 when the worst-case term-sum bound fits, otherwise
// in exact big integers. Prefix products per term are maintained
// incrementally; the last variable is resolved by binary search whenever the
// polynomial is monotone in it (all its terms share a coefficient sign).
template <typename TI>
class Enumerator {
  public:
    Enumerator(const Polynomial& P, std::vector<std::int64_t> lo, std::vector<std::int64_t> hi,
               ColoringMode mode,
               const std::vector<std::pair<std::vector<std::size_t>, std::size_t>>& injectivity)
        : n_(P.var_count()), lo_(std::move(lo)), hi_(std::move(hi)), mode_(mode),
          injectivity_(injectivity) {
        for (const auto& [index, coeff] : P.terms()) {
            Term t;
            t.coeff = static_cast<TI>(coeff);
            t.exps.resize(n_);
            for (std::size_t v = 0; v < n_; ++v) t.exps[v] = index[v];
            terms_.push_back(std::move(t));
        }
        // monotone-in-last test
        int sign = 0;
        monotone_last_ = n_ >= 1;
        for (const auto& t : terms_) {
            if (n_ == 0 || t.exps[n_ - 1] == 0) continue;
            int s = t.coeff > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (sign != s) monotone_last_ = false;
        }
        if (sign == 0) monotone_last_ = false;  // last variable absent from P
        increasing_last_ = sign > 0;
        assignment_.resize(n_, 0);
        prefix_.assign(terms_.size(), TI(1));
        saved_.resize(n_, std::vector<TI>(terms_.size()));
        // suffix box products per term per depth: product over vars > d of lo^e / hi^e
        lo_suffix_.assign(terms_.size(), std::vector<TI>(n_ + 1, TI(1)));
        hi_suffix_.assign(terms_.size(), std::vector<TI>(n_ + 1, TI(1)));
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            for (std::size_t d = n_; d-- > 0;) {
                lo_suffix_[t][d] = lo_suffix_[t][d + 1] * power(TI(lo_[d]), terms_[t].exps[d]);
                hi_suffix_[t][d] = hi_suffix_[t][d + 1] * power(TI(hi_[d]), terms_[t].exps[d]);
            }
        }
    }

    void run(const std::function<void(const std::vector<std::int64_t>&)>& emit) {
        for (std::size_t d = 0; d < n_; ++d)
            if (lo_[d] > hi_[d]) return;
        emit_ = &emit;
        descend(0);
    }

  private:
    struct Term {
        TI coeff;
        std::vector<std::int64_t> exps;
    };

    static TI power(TI base, std::int64_t exp) {
        TI result(1);
        for (std::int64_t i = 0; i < exp; ++i) result *= base;
        return result;
    }

    // attainable range of P given vars < d assigned and vars >= d in their boxes
    void bounds(std::size_t d, TI& sum_lo, TI& sum_hi) const {
        sum_lo = 0;
        sum_hi = 0;
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            TI base = terms_[t].coeff * prefix_[t];
            if (base >= 0) {
                sum_lo += base * lo_suffix_[t][d];
                sum_hi += base * hi_suffix_[t][d];
            } else {
                sum_lo += base * hi_suffix_[t][d];
                sum_hi += base * lo_suffix_[t][d];
            }
        }
    }

    void assign(std::size_t d, std::int64_t value) {
        assignment_[d] = value;
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            saved_[d][t] = prefix_[t];
            if (terms_[t].exps[d] > 0) prefix_[t] *= power(TI(value), terms_[t].exps[d]);
        }
    }

    void unassign(std::size_t d) {
        for (std::size_t t = 0; t < terms_.size(); ++t) prefix_[t] = saved_[d][t];
    }

    // exact value with all variables assigned
    TI full_value() const {
        TI sum(0);
        for (std::size_t t = 0; t < terms_.size(); ++t) sum += terms_[t].coeff * prefix_[t];
        return sum;
    }

    void emit_if_root() {
        if (full_value() != 0) return;
        if (passes_mode(assignment_, mode_, injectivity_)) (*emit_)(assignment_);
    }

    void last_variable(std::size_t d) {
        if (!monotone_last_) {
            for (std::int64_t a = lo_[d]; a <= hi_[d]; ++a) {
                assign(d, a);
                emit_if_root();
                unassign(d);
            }
            return;
        }
        // strictly monotone: at most one root in [lo, hi]
        std::int64_t lo = lo_[d], hi = hi_[d];
        while (lo < hi) {
            std::int64_t mid = lo + (hi - lo) / 2;
            assign(d, mid);
            TI value = full_value();
            unassign(d);
            bool ascend = increasing_last_ ? (value < 0) : (value > 0);
            if (value == 0) {
                lo = hi = mid;
            } else if (ascend) {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        if (lo == hi) {
            assign(d, lo);
            emit_if_root();
            unassign(d);
        }
    }

    void descend(std::size_t d) {
        if (n_ == 0) return;
        if (d == n_ - 1) {
            last_variable(d);
            return;
        }
        for (std::int64_t a = lo_[d]; a <= hi_[d]; ++a) {
            assign(d, a);
            TI sum_lo, sum_hi;
            bounds(d + 1, sum_lo, sum_hi);
            if (sum_lo <= 0 && 0 <= sum_hi) descend(d + 1);
            unassign(d);
        }
    }

    std::size_t n_;
    std::vector<std::int64_t> lo_, hi_;
    ColoringMode mode_;
    const std::vector<std::pair<std::vector<std::size_t>, std::size_t>>& injectivity_;
    std::vector<Term> terms_;
    bool monotone_last_ = false;
    bool increasing_last_ = false;
    std::vector<std::int64_t> assignment_;
    std::vector<TI> prefix_;
    std::vector<std::vector<TI>> saved_;
    std::vector<std::vector<TI>> lo_suffix_, hi_suffix_;
    const std::function<void(const std::vector<std::int64_t>&)>* emit_ = nullptr;
};

void validate_enumeration_input(const Polynomial& P) {
    if (P.has_negative_exponent())
        throw std::invalid_argument("enumerate_solutions: polynomial mode required");
    if (P.is_zero())
        throw std::invalid_argument("enumerate_solutions: zero polynomial solves everywhere");
    if (P.var_count() == 0)
        throw std::invalid_argument("enumerate_solutions: no variables");
    if (P.occurring_variables().size() != P.var_count())
        throw std::invalid_argument(
            "enumerate_solutions: every declared variable must occur in the polynomial");
}

// Worst-case |sum of terms| over the boxes, exactly.
Int term_sum_bound(const Polynomial& P, const std::vector<std::int64_t>& hi) {
    Int bound = 0;
    for (const auto& [index, coeff] : P.terms()) {
        Int term = abs(coeff);
        for (std::size_t v = 0; v < hi.size(); ++v)
            for (std::int64_t e = 0; e < index[v]; ++e) term *= hi[v];
        bound += term;
    }
    return bound;
}

std::vector<std::vector<std::int64_t>> enumerate_boxed(
    const Polynomial& P, const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi,
    ColoringMode mode, const std::vector<InjectivityConstraint>& injectivity,
    const EnumerationOptions& options) {
    validate_enumeration_input(P);
    std::int64_t max_hi = 1;
    for (std::int64_t h : hi) max_hi = std::max(max_hi, h);
    std::int64_t estimate = tuple_estimate(max_hi, P.var_count(), options.tuple_estimate_budget);
    if (estimate > options.tuple_estimate_budget)
        throw std::length_error("enumerate_solutions: tuple estimate " +
                                std::string(estimate > options.tuple_estimate_budget ? ">" : "=") +
                                " " + std::to_string(options.tuple_estimate_budget) +
                                " exceeds the budget");
    auto resolved = resolve_injectivity(P, injectivity);

    std::vector<std::vector<std::int64_t>> out;
    auto emit = std::function<void(const std::vector<std::int64_t>&)>(
        [&](const std::vector<std::int64_t>& tuple) { out.push_back(tuple); });
    static const Int kInt64Safe = Int(1) << 60;
    if (term_sum_bound(P, hi) <= kInt64Safe) {
        Enumerator<std::int64_t> e(P, lo, hi, mode, resolved);
        e.run(emit);
    } else {
        Enumerator<Int> e(P, lo, hi, mode, resolved);
        e.run(emit);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> value_blocks(
    const std::vector<std::vector<std::int64_t>>& solutions) {
    std::set<std::vector<std::int64_t>> sets;
    for (const auto& tuple : solutions) {
        std::vector<std::int64_t> s(tuple);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.insert(std::move(s));
    }
    return {sets.begin(), sets.end()};
}

void validate_problem(const ColoringProblem& problem) {
    if (problem.N < 1) throw std::invalid_argument("coloring problem: N must be >= 1");
    if (problem.r < 1) throw std::invalid_argument("coloring problem: r must be >= 1");
}

// Core r-coloring backtracking over precomputed distinct-value blocks.
// Elements are colored 1..N in order; per-block per-color counters propagate
// "block would go monochromatic" conflicts; symmetry breaking fixes element 1
// and introduces colors in ascending order. Candidate colors are tried
// least-constraining first (fewest blocks moved to one-away-from-mono).
SearchOutcome search_blocks(std::int64_t N, int r,
                            const std::vector<std::vector<std::int64_t>>& blocks,
                            std::int64_t node_budget) {
    SearchOutcome outcome;
    outcome.solution_count = static_cast<std::int64_t>(blocks.size());
    auto started = std::chrono::steady_clock::now();
    auto finish = [&](SearchOutcome::Kind kind) {
        outcome.kind = kind;
        outcome.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                .count();
        return outcome;
    };

    std::vector<std::vector<int>> blocks_of(static_cast<std::size_t>(N) + 1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::int64_t e : blocks[b]) blocks_of[static_cast<std::size_t>(e)].push_back((int)b);
    std::vector<std::vector<int>> cnt(blocks.size(), std::vector<int>(r, 0));
    std::vector<int> size(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) size[b] = (int)blocks[b].size();

    std::vector<int> color(static_cast<std::size_t>(N), -1);
    enum { kFound, kExhausted, kBudget };

    std::function<int(std::int64_t, int)> go = [&](std::int64_t d, int max_used) -> int {
        if (d == N) return kFound;
        const auto& mine = blocks_of[static_cast<std::size_t>(d + 1)];
        int c_limit = std::min(r - 1, max_used + 1);
        std::vector<std::pair<int, int>> candidates;  // (score, color)
        for (int c = 0; c <= c_limit; ++c) {
            bool conflict = false;
            int score = 0;
            for (int b : mine) {
                if (cnt[b][c] == size[b] - 1) { conflict = true; break; }
                if (cnt[b][c] == size[b] - 2) ++score;
            }
            if (!conflict) candidates.push_back({score, c});
        }
        std::sort(candidates.begin(), candidates.end());
        for (const auto& [score, c] : candidates) {
            (void)score;
            if (++outcome.nodes_explored > node_budget) return kBudget;
            color[static_cast<std::size_t>(d)] = c;
            for (int b : mine) ++cnt[b][c];
            int res = go(d + 1, std::max(max_used, c));
            if (res != kExhausted) return res;
            for (int b : mine) --cnt[b][c];
            color[static_cast<std::size_t>(d)] = -1;
        }
        return kExhausted;
    };

    int res = go(0, -1);
    if (res == kBudget) return finish(SearchOutcome::Kind::BudgetExhausted);
    if (res == kExhausted) return finish(SearchOutcome::Kind::Forced);
    // internal invariant: no block is monochromatic under the found coloring
    for (const auto& block : blocks) {
        bool mono = true;
        for (std::size_t i = 1; i < block.size(); ++i)
            if (color[block[i] - 1] != color[block[0] - 1]) { mono = false; break; }
        if (mono)
            throw std::logic_error("search_coloring: propagation admitted a monochromatic block");
    }
    outcome.coloring = color;
    return finish(SearchOutcome::Kind::ColoringFound);
}

// ---- fast path for check_coloring on two-term multilinear products ----

struct ProductShape {
    std::vector<std::size_t> pos_vars, neg_vars;  // variable positions per side
    std::int64_t pos_coeff = 0, neg_coeff = 0;    // positive magnitudes
};

std::optional<ProductShape> product_shape(const Polynomial& P) {
    if (P.terms().size() != 2) return std::nullopt;
    ProductShape shape;
    std::set<std::size_t> used;
    for (const auto& [index, coeff] : P.terms()) {
        std::vector<std::size_t> vars;
        for (std::size_t v = 0; v < P.var_count(); ++v) {
            if (index[v] == 0) continue;
            if (index[v] != 1) return std::nullopt;  // multilinear only
            if (!used.insert(v).second) return std::nullopt;
            vars.push_back(v);
        }
        if (vars.empty() || vars.size() > 2) return std::nullopt;
        Int magnitude = abs(coeff);
        if (magnitude > (Int(1) << 31)) return std::nullopt;
        if (coeff > 0) {
            if (shape.pos_coeff) return std::nullopt;
            shape.pos_coeff = static_cast<std::int64_t>(magnitude);
            shape.pos_vars = vars;
        } else {
            if (shape.neg_coeff) return std::nullopt;
            shape.neg_coeff = static_cast<std::int64_t>(magnitude);
            shape.neg_vars = vars;
        }
    }
    if (!shape.pos_coeff || !shape.neg_coeff) return std::nullopt;  // same-sign pair
    return shape;
}

class ProductBitset {
  public:
    explicit ProductBitset(std::int64_t max_value)
        : max_value_(max_value), words_((static_cast<std::size_t>(max_value) + 64) / 64, 0) {}

    void set(std::int64_t v) { words_[v >> 6] |= std::uint64_t(1) << (v & 63); }
    bool test(std::int64_t v) const {
        if (v < 1 || v > max_value_) return false;
        return words_[v >> 6] >> (v & 63) & 1;
    }
    template <typename F>
    void for_each(F&& f) const {  // ascending
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                if (!f(static_cast<std::int64_t>(w) * 64 + b)) return;
            }
        }
    }

  private:
    std::int64_t max_value_;
    std::vector<std::uint64_t> words_;
};

ProductBitset side_products(const std::vector<std::int64_t>& elements, std::size_t arity,
                            std::int64_t max_value) {
    ProductBitset bits(max_value);
    if (arity == 1) {
        for (std::int64_t e : elements) bits.set(e);
    } else {
        for (std::size_t i = 0; i < elements.size(); ++i)
            for (std::size_t j = i; j < elements.size(); ++j)
                bits.set(elements[i] * elements[j]);
    }
    return bits;
}

// ordered factorizations of `product` into `arity` same-colored values <= N
std::vector<std::vector<std::int64_t>> colored_factorizations(
    std::int64_t product, std::size_t arity, const Coloring& coloring, int color) {
    std::int64_t N = static_cast<std::int64_t>(coloring.size());
    std::vector<std::vector<std::int64_t>> out;
    if (arity == 1) {
        if (product >= 1 && product <= N && coloring[product - 1] == color) out.push_back({product});
        return out;
    }
    for (std::int64_t d = 1; d * d <= product; ++d) {
        if (product % d != 0) continue;
        std::int64_t e = product / d;
        if (d > N || e > N) continue;
        if (coloring[d - 1] != color || coloring[e - 1] != color) continue;
        out.push_back({d, e});
        if (d != e) out.push_back({e, d});
    }
    return out;
}

std::optional<std::vector<std::int64_t>> check_products(
    const Polynomial& P, const ProductShape& shape, const Coloring& coloring, ColoringMode mode,
    const std::vector<std::pair<std::vector<std::size_t>, std::size_t>>& injectivity) {
    std::int64_t N = static_cast<std::int64_t>(coloring.size());
    static const std::int64_t kBitBudget = 400'000'000;
    std::int64_t max_pos = shape.pos_vars.size() == 2 ? N * N : N;
    std::int64_t max_neg = shape.neg_vars.size() == 2 ? N * N : N;
    if (max_pos > kBitBudget || max_neg > kBitBudget)
        throw std::length_error("check_coloring: product table would exceed the memory budget");

    std::map<int, std::vector<std::int64_t>> classes;
    for (std::int64_t e = 1; e <= N; ++e) classes[coloring[e - 1]].push_back(e);

    for (const auto& [color, elements] : classes) {
        ProductBitset pos_bits = side_products(elements, shape.pos_vars.size(), max_pos);
        ProductBitset neg_bits =
            shape.pos_vars.size() == shape.neg_vars.size()
                ? pos_bits
                : side_products(elements, shape.neg_vars.size(), max_neg);

        std::optional<std::vector<std::int64_t>> witness;
        neg_bits.for_each([&](std::int64_t q) {
            // need pos_coeff * p == neg_coeff * q
            std::int64_t numer = shape.neg_coeff * q;
            if (numer % shape.pos_coeff != 0) return true;
            std::int64_t p = numer / shape.pos_coeff;
            if (!pos_bits.test(p)) return true;
            for (const auto& pos_tuple :
                 colored_factorizations(p, shape.pos_vars.size(), coloring, color)) {
                for (const auto& neg_tuple :
                     colored_factorizations(q, shape.neg_vars.size(), coloring, color)) {
                    std::vector<std::int64_t> tuple(P.var_count(), 0);
                    for (std::size_t i = 0; i < shape.pos_vars.size(); ++i)
                        tuple[shape.pos_vars[i]] = pos_tuple[i];
                    for (std::size_t i = 0; i < shape.neg_vars.size(); ++i)
                        tuple[shape.neg_vars[i]] = neg_tuple[i];
                    if (passes_mode(tuple, mode, injectivity)) {
                        witness = tuple;
                        return false;
                    }
                }
            }
            return true;
        });
        if (witness) return witness;
    }
    return std::nullopt;
}

}  // namespace

std::string to_string(ColoringMode mode) {
    switch (mode) {
        case ColoringMode::Any: return "any";
        case ColoringMode::NonTrivial: return "non-trivial";
        case ColoringMode::Injectivity: return "injectivity";
        case ColoringMode::ExcludeConstant: return "exclude-constant";
    }
    return "?";
}

std::string to_string(SearchOutcome::Kind kind) {
    switch (kind) {
        case SearchOutcome::Kind::ColoringFound: return "coloring_found";
        case SearchOutcome::Kind::Forced: return "forced";
        case SearchOutcome::Kind::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

std::vector<std::vector<std::int64_t>> enumerate_solutions(
    const Polynomial& P, std::int64_t N, ColoringMode mode,
    const std::vector<InjectivityConstraint>& injectivity, const EnumerationOptions& options) {
    if (N < 1) throw std::invalid_argument("enumerate_solutions: N must be >= 1");
    std::vector<std::int64_t> lo(P.var_count(), 1), hi(P.var_count(), N);
    return enumerate_boxed(P, lo, hi, mode, injectivity, options);
}

nlohmann::json search_outcome_to_json(const SearchOutcome& outcome) {
    nlohmann::json out = {{"kind", to_string(outcome.kind)},
                          {"nodes_explored", outcome.nodes_explored},
                          {"solution_count", outcome.solution_count},
                          {"elapsed_ms", outcome.elapsed_ms}};
    if (outcome.coloring) {
        nlohmann::json witness = nlohmann::json::array();
        for (int c : *outcome.coloring) witness.push_back(c);
        out["witness"] = witness;
    }
    return out;
}

SearchOutcome search_coloring(const ColoringProblem& problem, std::int64_t node_budget) {
    validate_problem(problem);
    auto solutions =
        enumerate_solutions(problem.P, problem.N, problem.mode, problem.injectivity, {});
    auto blocks = value_blocks(solutions);
    SearchOutcome outcome = search_blocks(problem.N, problem.r, blocks, node_budget);
    if (outcome.kind == SearchOutcome::Kind::ColoringFound) {
        // contract: witnesses are re-checked through the public checker
        auto mono =
            check_coloring(problem.P, *outcome.coloring, problem.mode, problem.injectivity);
        if (mono)
            throw std::logic_error("search_coloring: found coloring failed re-check");
    }
    return outcome;
}

nlohmann::json rado_number_to_json(const RadoNumberResult& result) {
    return {{"kind", result.kind == RadoNumberResult::Kind::Found ? "found" : "lower_bound"},
            {"value", result.value},
            {"nodes_explored", result.nodes_explored}};
}

RadoNumberResult rado_number(const Polynomial& P, int r, ColoringMode mode, std::int64_t N_max,
                             std::int64_t node_budget) {
    if (r < 1) throw std::invalid_argument("rado_number: r must be >= 1");
    if (N_max < 1) throw std::invalid_argument("rado_number: N_max must be >= 1");
    validate_enumeration_input(P);

    RadoNumberResult result;
    std::set<std::vector<std::int64_t>> block_set;
    std::size_t n = P.var_count();
    for (std::int64_t N = 1; N <= N_max; ++N) {
        // extend with solutions whose maximum value is exactly N: split on the
        // first position holding N
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::int64_t> lo(n, 1), hi(n, N);
            for (std::size_t v = 0; v < j; ++v) hi[v] = N - 1;
            lo[j] = hi[j] = N;
            if (N == 1 && j > 0) break;
            for (const auto& tuple : enumerate_boxed(P, lo, hi, mode, {}, {})) {
                std::vector<std::int64_t> s(tuple);
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                block_set.insert(std::move(s));
            }
        }
        std::vector<std::vector<std::int64_t>> blocks(block_set.begin(), block_set.end());
        SearchOutcome outcome = search_blocks(N, r, blocks, node_budget);
        result.nodes_explored += outcome.nodes_explored;
        if (outcome.kind == SearchOutcome::Kind::BudgetExhausted)
            throw std::runtime_error("rado_number: node budget exhausted at N=" +
                                     std::to_string(N));
        if (outcome.kind == SearchOutcome::Kind::Forced) {
            result.kind = RadoNumberResult::Kind::Found;
            result.value = N;
            return result;
        }
    }
    result.kind = RadoNumberResult::Kind::LowerBound;
    result.value = N_max;
    return result;
}

std::optional<std::vector<std::int64_t>> check_coloring(
    const Polynomial& P, const Coloring& coloring, ColoringMode mode,
    const std::vector<InjectivityConstraint>& injectivity, const EnumerationOptions& options) {
    for (int c : coloring)
        if (c < 0) throw std::invalid_argument("check_coloring: coloring must be total");
    std::int64_t N = static_cast<std::int64_t>(coloring.size());
    if (N == 0) return std::nullopt;
    validate_enumeration_input(P);
    auto resolved = resolve_injectivity(P, injectivity);

    std::int64_t estimate = tuple_estimate(N, P.var_count(), options.tuple_estimate_budget);
    if (estimate <= options.tuple_estimate_budget) {
        for (const auto& tuple : enumerate_solutions(P, N, mode, injectivity, options)) {
            bool mono = true;
            for (std::size_t i = 1; i < tuple.size(); ++i)
                if (coloring[tuple[i] - 1] != coloring[tuple[0] - 1]) { mono = false; break; }
            if (mono) return tuple;
        }
        return std::nullopt;
    }
    if (auto shape = product_shape(P))
        return check_products(P, *shape, coloring, mode, resolved);
    throw std::length_error(
        "check_coloring: tuple estimate exceeds the budget and no product strategy applies");
}

Coloring valuation_parity_coloring(std::int64_t N, std::int64_t base) {
    if (N < 1) throw std::invalid_argument("valuation_parity_coloring: N must be >= 1");
    if (base < 2) throw std::invalid_argument("valuation_parity_coloring: base must be >= 2");
    Coloring coloring(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        std::int64_t v = 0, m = n;
        while (m % base == 0) {
            m /= base;
            ++v;
        }
        coloring[n - 1] = static_cast<int>(v & 1);
    }
    return coloring;
}

}  // namespace pr

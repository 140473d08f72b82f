#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "pr/index_sets.hpp"
#include "pr/multi_index.hpp"
#include "pr/polynomial.hpp"
#include "pr/subset_sum.hpp"

#include "oracles.hpp"

using pr::Int;
using pr::MultiIndex;
using pr::Polynomial;

namespace {

Polynomial make(const std::vector<std::string>& vars,
                const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>& terms,
                bool laurent = false) {
    Polynomial P(vars, laurent);
    for (const auto& [exps, coeff] : terms) {
        MultiIndex index;
        index.exps = exps;
        P.add_term(index, coeff);
    }
    return P;
}

MultiIndex random_index(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
    MultiIndex index(n);
    std::uniform_int_distribution<std::int64_t> e(lo, hi);
    for (std::size_t i = 0; i < n; ++i) index[i] = e(rng);
    return index;
}

}  // namespace

TEST_CASE("multi-index length, zero test, nonzero positions") {
    MultiIndex a{2, 0, 1};
    CHECK(a.length() == 3);
    CHECK(!a.is_zero());
    CHECK(a.nonzero_positions() == std::vector<std::size_t>{0, 2});

    MultiIndex zero(3);
    CHECK(zero.length() == 0);
    CHECK(zero.is_zero());
    CHECK(zero.nonzero_positions().empty());

    MultiIndex laurent{1, -1};
    CHECK(laurent.length() == 0);
    CHECK(!laurent.is_zero());
}

TEST_CASE("componentwise order") {
    CHECK(pr::componentwise_leq(MultiIndex{1, 0}, MultiIndex{2, 0}));
    CHECK(pr::componentwise_leq(MultiIndex{1, 1}, MultiIndex{1, 1}));
    CHECK(!pr::componentwise_leq(MultiIndex{2, 0}, MultiIndex{1, 1}));
    CHECK(pr::strictly_below(MultiIndex{1, 0}, MultiIndex{1, 2}));
    CHECK(!pr::strictly_below(MultiIndex{1, 2}, MultiIndex{1, 2}));
}

TEST_CASE("canonical compare: shorter first, then lex-larger first") {
    // Degree 1 precedes degree 2.
    CHECK(pr::canonical_compare(MultiIndex{1, 0}, MultiIndex{1, 1}) < 0);
    // At equal degree the lexicographically larger vector comes first: x^2 before x*y.
    CHECK(pr::canonical_compare(MultiIndex{2, 0}, MultiIndex{1, 1}) < 0);
    CHECK(pr::canonical_compare(MultiIndex{1, 1}, MultiIndex{0, 2}) < 0);
    // x before y.
    CHECK(pr::canonical_compare(MultiIndex{1, 0}, MultiIndex{0, 1}) < 0);
    CHECK(pr::canonical_compare(MultiIndex{0, 1}, MultiIndex{1, 0}) > 0);
    CHECK(pr::canonical_compare(MultiIndex{1, 2}, MultiIndex{1, 2}) == 0);
}

TEST_CASE("canonical compare is a strict total order (randomized)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        auto a = random_index(rng, 3, 0, 4);
        auto b = random_index(rng, 3, 0, 4);
        auto c = random_index(rng, 3, 0, 4);
        int ab = pr::canonical_compare(a, b);
        CHECK((ab == 0) == (a == b));
        CHECK(pr::canonical_compare(b, a) == -ab);
        // Transitivity: a <= b <= c implies a <= c.
        if (ab <= 0 && pr::canonical_compare(b, c) <= 0)
            CHECK(pr::canonical_compare(a, c) <= 0);
    }
}

TEST_CASE("add_term merges coefficients and erases zero results") {
    Polynomial P({"x", "y"});
    P.add_term(MultiIndex{1, 0}, 2);
    P.add_term(MultiIndex{1, 0}, 3);
    CHECK(P.term_count() == 1);
    CHECK(P.coefficient(MultiIndex{1, 0}) == 5);
    P.add_term(MultiIndex{1, 0}, -5);
    CHECK(P.is_zero());
    CHECK(P.coefficient(MultiIndex{1, 0}) == 0);
}

TEST_CASE("constructor rejects bad variable lists and mismatched indexes") {
    CHECK_THROWS_AS(Polynomial({"x", "x"}), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial({""}), std::invalid_argument);
    Polynomial P({"x", "y"});
    CHECK_THROWS_AS(P.add_term(MultiIndex{1}, 1), std::invalid_argument);
    // Negative exponents require Laurent mode.
    CHECK_THROWS_AS(P.add_term(MultiIndex{-1, 0}, 1), std::invalid_argument);
    Polynomial L({"x", "y"}, true);
    L.add_term(MultiIndex{-1, 2}, 1);
    CHECK(L.has_negative_exponent());
}

TEST_CASE("constant term accessors") {
    auto P = make({"x"}, {{{1}, 2}, {{0}, -7}});
    CHECK(P.has_constant_term());
    CHECK(P.constant_term() == -7);
    CHECK(Polynomial::constant(5).constant_term() == 5);
    CHECK(Polynomial::constant(0).is_zero());
    auto Q = make({"x"}, {{{1}, 2}});
    CHECK(!Q.has_constant_term());
    CHECK(Q.constant_term() == 0);
}

TEST_CASE("ring operations expand correctly") {
    auto x = make({"x", "y"}, {{{1, 0}, 1}});
    auto y = make({"x", "y"}, {{{0, 1}, 1}});
    auto sum = x + y;
    auto diff = x - y;
    auto prod = sum * diff;
    CHECK(prod == make({"x", "y"}, {{{2, 0}, 1}, {{0, 2}, -1}}));

    auto cube = (x + Polynomial::constant(1).with_variables({"x", "y"})).pow(3);
    CHECK(cube.coefficient(MultiIndex{3, 0}) == 1);
    CHECK(cube.coefficient(MultiIndex{2, 0}) == 3);
    CHECK(cube.coefficient(MultiIndex{1, 0}) == 3);
    CHECK(cube.coefficient(MultiIndex{0, 0}) == 1);

    CHECK((x - x).is_zero());
    CHECK((-x).coefficient(MultiIndex{1, 0}) == -1);
    CHECK(x.pow(0) == Polynomial::constant(1).with_variables({"x", "y"}));
}

TEST_CASE("operands over different variable lists unify") {
    auto a = make({"x"}, {{{2}, 1}});
    auto b = make({"y"}, {{{1}, 3}});
    auto sum = a + b;
    CHECK(sum.var_count() == 2);
    CHECK(sum.coefficient(MultiIndex{2, 0}) == 1);
    CHECK(sum.coefficient(MultiIndex{0, 1}) == 3);

    auto [ua, ub] = pr::unify_variables(a, b);
    CHECK(ua.vars() == std::vector<std::string>{"x", "y"});
    CHECK(ub.vars() == std::vector<std::string>{"x", "y"});
    CHECK(pr::same_polynomial(ua, a));
    CHECK(pr::same_polynomial(ub, b));
}

TEST_CASE("evaluation") {
    auto P = make({"x", "y", "z"}, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, -1}});
    CHECK(P.evaluate({Int(3), Int(4), Int(7)}) == 0);
    CHECK(P.evaluate({Int(3), Int(4), Int(6)}) == 1);
    CHECK(P.evaluate(std::map<std::string, Int>{{"x", 1}, {"y", 2}, {"z", 3}}) == 0);
    CHECK_THROWS_AS(P.evaluate({Int(1), Int(2)}), std::invalid_argument);
    CHECK_THROWS_AS(P.evaluate(std::map<std::string, Int>{{"x", 1}, {"y", 2}}),
                    std::invalid_argument);

    // Big values must not overflow: (10^6)^3 needs 60 bits.
    auto cube = make({"x"}, {{{3}, 1}});
    CHECK(cube.evaluate({Int(1000000)}) == Int("1000000000000000000"));
}

TEST_CASE("rational evaluation handles Laurent exponents") {
    auto L = make({"x", "y"}, {{{2, -3}, 1}}, true);
    CHECK_THROWS_AS(L.evaluate({Int(2), Int(2)}), std::domain_error);
    CHECK(L.evaluate_rational({pr::Rat(2), pr::Rat(2)}) == pr::Rat(1, 2));
    CHECK(L.evaluate_rational({pr::Rat(1), pr::Rat(1)}) == 1);
    auto P = make({"x"}, {{{1}, 1}, {{0}, 1}});
    CHECK(P.evaluate_rational({pr::Rat(1, 2)}) == pr::Rat(3, 2));
}

TEST_CASE("support listing follows canonical order") {
    auto P = make({"x", "y"}, {{{0, 2}, 1}, {{1, 0}, 2}, {{1, 1}, -1}});
    auto support = P.support();
    REQUIRE(support.size() == 3);
    CHECK(support[0] == MultiIndex{1, 0});
    CHECK(support[1] == MultiIndex{1, 1});
    CHECK(support[2] == MultiIndex{0, 2});
}

TEST_CASE("minimal and maximal support indexes match the pairwise oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3000; ++trial) {
        auto P = oracle::random_polynomial(rng, 3, 4, 4, 5);
        auto support = P.support();
        auto mins = P.minimal_indices();
        auto maxs = P.maximal_indices();
        auto expected_min = oracle::minimal_indices(support);
        auto expected_max = oracle::maximal_indices(support);
        // Library output preserves canonical support order; the oracle scans in
        // the same order, so direct equality is the right comparison.
        CHECK(mins == expected_min);
        CHECK(maxs == expected_max);
    }
}

TEST_CASE("minimal/maximal indexes reject degenerate inputs") {
    Polynomial zero({"x"});
    CHECK_THROWS_AS(zero.minimal_indices(), std::domain_error);
    CHECK_THROWS_AS(zero.maximal_indices(), std::domain_error);
    auto L = make({"x"}, {{{-1}, 1}}, true);
    CHECK_THROWS_AS(L.minimal_indices(), std::domain_error);
}

TEST_CASE("homogeneous degree detection") {
    CHECK(make({"x", "y"}, {{{2, 0}, 1}, {{1, 1}, 3}}).homogeneous_degree() == 2);
    CHECK(make({"x"}, {{{1}, 1}}).homogeneous_degree() == 1);
    CHECK(!make({"x"}, {{{2}, 1}, {{1}, 1}}).homogeneous_degree().has_value());
    CHECK(!Polynomial({"x"}).homogeneous_degree().has_value());
    CHECK(Polynomial::constant(4).homogeneous_degree() == 0);
}

TEST_CASE("linearity and total degree") {
    auto linear = make({"x", "y"}, {{{1, 0}, 1}, {{0, 1}, -2}, {{0, 0}, 3}});
    CHECK(linear.is_linear());
    CHECK(linear.total_degree() == 1);
    auto quad = make({"x", "y"}, {{{1, 1}, 1}});
    CHECK(!quad.is_linear());
    CHECK(quad.total_degree() == 2);
    CHECK(Polynomial({"x"}).total_degree() == 0);
}

TEST_CASE("substitution expands distributively") {
    // x := y + 1 in x^2 - 1 gives y^2 + 2y.
    auto P = make({"x"}, {{{2}, 1}, {{0}, -1}});
    auto repl = make({"y"}, {{{1}, 1}, {{0}, 1}});
    auto Q = P.substitute("x", repl);
    CHECK(pr::same_polynomial(Q, make({"y"}, {{{2}, 1}, {{1}, 2}})));

    // Absent variable: unchanged.
    CHECK(P.substitute("w", repl) == P);

    // Capture: the replacement may not mention a variable that stays behind.
    auto two_var = make({"x", "y"}, {{{1, 1}, 1}});
    CHECK_THROWS_AS(two_var.substitute("x", repl), std::invalid_argument);

    auto L = make({"x"}, {{{-1}, 1}}, true);
    CHECK_THROWS_AS(L.substitute("x", repl), std::domain_error);
}

TEST_CASE("substitution composes with evaluation (randomized)") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        auto P = oracle::random_polynomial(rng, 2, 3, 3, 3);
        // Replace x by a polynomial in fresh variables {u, v}.
        pr::Polynomial repl({"u", "v"});
        repl.add_term(MultiIndex{1, 0}, std::uniform_int_distribution<int>(-2, 2)(rng));
        repl.add_term(MultiIndex{0, 2}, std::uniform_int_distribution<int>(-2, 2)(rng));
        repl.add_term(MultiIndex{0, 0}, std::uniform_int_distribution<int>(-2, 2)(rng));
        auto Q = P.substitute("x", repl);
        std::map<std::string, Int> point{{"u", 2}, {"v", -1}, {"y", 3}};
        std::map<std::string, Int> lifted{{"x", repl.evaluate({Int(2), Int(-1)})}, {"y", 3}};
        std::map<std::string, Int> q_point, p_point;
        for (const auto& v : Q.vars()) q_point[v] = point[v];
        for (const auto& v : P.vars()) p_point[v] = lifted[v];
        CHECK(Q.evaluate(q_point) == P.evaluate(p_point));
    }
}

TEST_CASE("reciprocal transform flips exponents within the clearing degree") {
    // x + y - z, degree 1: substituting 1/x_i and clearing (xyz)^1 gives
    // yz + xz - xy.
    auto P = make({"x", "y", "z"}, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, -1}});
    auto R = P.reciprocal_transform();
    CHECK(R.clearing_degree == 1);
    CHECK(R.transformed ==
          make({"x", "y", "z"}, {{{0, 1, 1}, 1}, {{1, 0, 1}, 1}, {{1, 1, 0}, -1}}));
    CHECK(!R.transformed.is_laurent());

    // Involution up to nothing: applying twice returns the original.
    CHECK(R.transformed.reciprocal_transform().transformed == P);

    CHECK_THROWS_AS(make({"x"}, {{{2}, 1}, {{1}, 1}}).reciprocal_transform(), std::domain_error);
}

TEST_CASE("constant diagonal coefficients and positive roots") {
    // x + y - 3z on the diagonal is -c: no positive roots.
    auto P = make({"x", "y", "z"}, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, -3}});
    auto diag = P.constant_diagonal();
    CHECK(!diag.identically_zero);
    CHECK(diag.roots.empty());
    REQUIRE(diag.coeffs.size() == 2);
    CHECK(diag.coeffs[0] == 0);
    CHECK(diag.coeffs[1] == -1);

    // x + y - 2z vanishes identically on the diagonal.
    auto Q = make({"x", "y", "z"}, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, -2}});
    CHECK(Q.constant_diagonal().identically_zero);

    // x + y - z^2 on the diagonal is 2c - c^2: root c = 2.
    auto S = make({"x", "y", "z"}, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 2}, -1}});
    auto sd = S.constant_diagonal();
    CHECK(!sd.identically_zero);
    CHECK(sd.roots == std::vector<Int>{Int(2)});

    // x^2 - 5x + 6 has diagonal roots 2 and 3.
    auto T = make({"x"}, {{{2}, 1}, {{1}, -5}, {{0}, 6}});
    CHECK(T.constant_diagonal().roots == std::vector<Int>{Int(2), Int(3)});
}

TEST_CASE("diagonal roots agree with a direct scan (randomized)") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 400; ++trial) {
        auto P = oracle::random_polynomial(rng, 3, 3, 4, 4);
        auto diag = P.constant_diagonal();
        for (std::int64_t c = 1; c <= 50; ++c) {
            std::vector<Int> point(P.var_count(), Int(c));
            bool is_root = P.evaluate(point) == 0;
            bool listed = diag.identically_zero ||
                          std::find(diag.roots.begin(), diag.roots.end(), Int(c)) !=
                              diag.roots.end();
            CHECK(is_root == listed);
        }
    }
}

TEST_CASE("canonical formatting") {
    auto P = make({"x", "y", "z"}, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, -1}});
    CHECK(P.format() == "1*x + 1*y + -1*z");
    CHECK(Polynomial({"x"}).format() == "0");
    CHECK(Polynomial::constant(-4).format() == "-4");
    CHECK(make({"x", "y"}, {{{2, 3}, 5}}).format() == "5*x^2*y^3");
    CHECK(make({"x", "y"}, {{{2, -3}, 1}}, true).format() == "1*x^2*y^-3");
    // Constant term prints as a bare coefficient after the variable terms.
    CHECK(make({"x"}, {{{1}, 2}, {{0}, -1}}).format() == "2*x + -1");
}

TEST_CASE("variable embedding and renaming") {
    auto P = make({"x", "z"}, {{{1, 0}, 1}, {{0, 2}, -1}});
    auto wide = P.with_variables({"w", "x", "y", "z"});
    CHECK(wide.vars() == std::vector<std::string>{"w", "x", "y", "z"});
    CHECK(pr::same_polynomial(P, wide));
    CHECK_THROWS_AS(P.with_variables({"x"}), std::invalid_argument);

    auto renamed = P.renamed({{"x", "a"}, {"z", "b"}});
    CHECK(renamed.vars() == std::vector<std::string>{"a", "b"});
    CHECK(renamed.coefficient(MultiIndex{1, 0}) == 1);
    CHECK(renamed.coefficient(MultiIndex{0, 2}) == -1);

    // same_polynomial ignores ambient variable order.
    auto flipped = make({"z", "x"}, {{{0, 1}, 1}, {{2, 0}, -1}});
    CHECK(pr::same_polynomial(P, flipped));
    CHECK(!pr::same_polynomial(P, make({"x", "z"}, {{{1, 0}, 1}})));
}

TEST_CASE("zero-sum subset: documented tie-break and oracle agreement") {
    using pr::zero_sum_subset;
    // Smallest subset wins; among equal sizes the lexicographically first.
    auto J = zero_sum_subset({Int(1), Int(-1), Int(2), Int(-2)});
    REQUIRE(J.has_value());
    CHECK(*J == std::vector<std::size_t>{0, 1});
    CHECK(!zero_sum_subset({Int(1), Int(2), Int(4)}).has_value());
    CHECK(zero_sum_subset({Int(3), Int(-1), Int(-2)}) ==
          std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(zero_sum_subset(std::vector<Int>(41, Int(1))), std::length_error);

    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> size(1, 12);
    std::uniform_int_distribution<int> value(-6, 6);
    for (int trial = 0; trial < 4000; ++trial) {
        std::vector<Int> values(static_cast<std::size_t>(size(rng)));
        for (auto& v : values) v = value(rng);
        auto got = zero_sum_subset(values);
        auto expected = oracle::zero_sum_subset(values);
        CHECK(got == expected);
        CHECK(pr::has_zero_sum_subset(values) == expected.has_value());
    }
}

TEST_CASE("zero-sum subset: meet-in-the-middle range agrees with enumeration") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> size(21, 26);
    std::uniform_int_distribution<int> value(-50, 50);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Int> values(static_cast<std::size_t>(size(rng)));
        for (auto& v : values) v = value(rng);
        CHECK(pr::zero_sum_subset(values) == oracle::zero_sum_subset(values));
    }
}

TEST_CASE("Rado index-set witness structure") {
    // x^2 and y: no nonempty position set gives equal exponent sums
    // (2 vs 0, 0 vs 1, 2 vs 1), so {(2,0), (0,1)} is not a Rado set.
    auto bad = pr::is_rado_index_set({MultiIndex{2, 0}, MultiIndex{0, 1}});
    CHECK(!bad.has_value());

    // x1^2*x2 and x3 do balance: positions {1, 2} sum to 1 on both sides.
    auto balanced = pr::is_rado_index_set({MultiIndex{2, 1, 0}, MultiIndex{0, 0, 1}});
    REQUIRE(balanced.has_value());
    CHECK(balanced->pair_witnesses.at({0, 1}) == std::vector<std::size_t>{1, 2});

    // x + y - z: minimal indexes e1, e2, e3 pairwise balance on {i, j}.
    auto good = pr::is_rado_index_set(
        {MultiIndex{1, 0, 0}, MultiIndex{0, 1, 0}, MultiIndex{0, 0, 1}});
    REQUIRE(good.has_value());
    CHECK(good->index_set.size() == 3);
    for (const auto& [pair, lambda] : good->pair_witnesses) {
        // Witness really balances the pair it is keyed by.
        std::int64_t sa = 0, sb = 0;
        for (auto pos : lambda) {
            sa += good->index_set[pair.first][pos];
            sb += good->index_set[pair.second][pos];
        }
        CHECK(!lambda.empty());
        CHECK(sa == sb);
    }
    CHECK(good->pair_witnesses.size() == 3);

    CHECK_THROWS_AS(pr::is_rado_index_set({}), std::invalid_argument);
    CHECK_THROWS_AS(pr::is_rado_index_set({MultiIndex{1, 0}, MultiIndex{1}}),
                    std::invalid_argument);
}

TEST_CASE("Rado detection matches the mask oracle (randomized)") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> count(1, 4);
    int rado_seen = 0, non_rado_seen = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        std::vector<MultiIndex> J;
        int k = count(rng);
        for (int i = 0; i < k; ++i) J.push_back(random_index(rng, 3, 0, 3));
        // Deduplicate: repeated indexes are legal input but trivially balanced.
        auto witness = pr::is_rado_index_set(J);
        bool expected = oracle::is_rado_set(J);
        CHECK(witness.has_value() == expected);
        (expected ? rado_seen : non_rado_seen)++;
        if (!witness) continue;
        for (const auto& [pair, lambda] : witness->pair_witnesses) {
            std::int64_t sa = 0, sb = 0;
            for (auto pos : lambda) {
                sa += witness->index_set[pair.first][pos];
                sb += witness->index_set[pair.second][pos];
            }
            CHECK(sa == sb);
        }
    }
    // The sample must exercise both outcomes.
    CHECK(rado_seen > 100);
    CHECK(non_rado_seen > 100);
}

TEST_CASE("Rado subsets of the minimal support match full enumeration") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 800; ++trial) {
        auto P = oracle::random_polynomial(rng, 3, 3, 4, 4);
        auto families = pr::rado_sets_of_minimal_indices(P);
        std::set<std::set<std::vector<std::int64_t>>> got;
        for (const auto& family : families) {
            std::set<std::vector<std::int64_t>> key;
            for (const auto& m : family) key.insert(m.exps);
            got.insert(std::move(key));
        }
        CHECK(got == oracle::rado_subsets_of_minimal(P.support()));
        // Size-then-graded-lex ordering: sizes never decrease.
        for (std::size_t i = 1; i < families.size(); ++i)
            CHECK(families[i - 1].size() <= families[i].size());
    }
}

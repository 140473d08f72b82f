#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pr/obstruction.hpp"
#include "pr/parser.hpp"
#include "pr/polynomial.hpp"

#include "oracles.hpp"

using pr::Int;
using pr::ModPObstruction;
using pr::MultiIndex;
using pr::Polynomial;
using pr::Verdict;

namespace {

Polynomial eq(const std::string& text) { return pr::parse_equation(text).normalized; }

// Re-verify an emitted certificate with plain modular arithmetic: both residue
// tables recomputed from scratch, no zeros anywhere, and the reported Rado
// sets exactly the Rado subsets of the minimal support.
void revalidate(const Polynomial& P, const ModPObstruction& cert) {
    std::int64_t p = cert.p;
    REQUIRE(p >= 2);

    REQUIRE(cert.condition1_residue_table.size() == static_cast<std::size_t>(p - 1));
    for (std::int64_t z = 1; z < p; ++z) {
        auto it = cert.condition1_residue_table.find(z);
        REQUIRE(it != cert.condition1_residue_table.end());
        CHECK(it->second == oracle::diagonal_mod(P, z, p));
        CHECK(it->second != 0);
    }

    std::set<std::set<std::vector<std::int64_t>>> reported;
    for (const auto& report : cert.condition2_reports) {
        std::vector<Int> coefficients;
        std::set<std::vector<std::int64_t>> key;
        for (const auto& alpha : report.rado_set.index_set) {
            coefficients.push_back(P.coefficient(alpha));
            REQUIRE(coefficients.back() != 0);  // really a support index
            key.insert(alpha.exps);
        }
        reported.insert(key);
        REQUIRE(report.residue_table.size() == static_cast<std::size_t>(p - 1));
        for (std::int64_t z = 1; z < p; ++z) {
            auto it = report.residue_table.find(z);
            REQUIRE(it != report.residue_table.end());
            CHECK(it->second ==
                  oracle::restricted_diagonal_mod(report.rado_set.index_set, coefficients, z, p));
            CHECK(it->second != 0);
        }
        // Pair witnesses must balance the pairs they claim to.
        for (const auto& [pair, lambda] : report.rado_set.pair_witnesses) {
            std::int64_t sa = 0, sb = 0;
            REQUIRE(!lambda.empty());
            for (auto pos : lambda) {
                sa += report.rado_set.index_set[pair.first][pos];
                sb += report.rado_set.index_set[pair.second][pos];
            }
            CHECK(sa == sb);
        }
    }
    CHECK(reported == oracle::rado_subsets_of_minimal(P.support()));

    // The constant solutions are exactly the positive diagonal roots.
    CHECK(cert.constant_solutions == P.constant_diagonal().roots);
}

}  // namespace

TEST_CASE("mod-p input validation") {
    auto P = eq("x + y = 3*z");
    CHECK_THROWS_AS(pr::check_mod_p(P, 4), std::invalid_argument);
    CHECK_THROWS_AS(pr::check_mod_p(P, 1), std::invalid_argument);
    CHECK_THROWS_AS(pr::check_mod_p(eq("x + y = 1"), 3), std::invalid_argument);
    CHECK_THROWS_AS(pr::check_mod_p(Polynomial({"x"}), 3), std::invalid_argument);
    CHECK_THROWS_AS(pr::find_mod_p_obstruction(P, 1), std::invalid_argument);
}

TEST_CASE("x1^2*x2 = 2*x3 obstructs first at p = 3") {
    auto P = eq("x1^2*x2 = 2*x3");
    // p = 2 fails: the singleton {x3} gives -2z = 0 (mod 2).
    CHECK(!pr::check_mod_p(P, 2).has_value());

    auto found = pr::find_mod_p_obstruction(P, 1000);
    REQUIRE(found.has_value());
    CHECK(found->first == 3);
    revalidate(P, found->second);
    CHECK(found->second.constant_solutions.empty());
    // Rado subsets of {(2,1,0), (0,0,1)}: both singletons and the pair.
    CHECK(found->second.condition2_reports.size() == 3);

    auto json = pr::mod_p_obstruction_to_json(found->second);
    CHECK(json.at("type") == "mod_p_obstruction");
    CHECK(json.at("p") == 3);
    CHECK(json.at("condition2_reports").size() == 3);
    CHECK(json.contains("condition1_residues"));
    CHECK(json.contains("constant_solutions"));
}

TEST_CASE("x + y = 3z obstructs first at p = 5") {
    auto P = eq("x + y = 3*z");
    // p = 2 dies on the pair {x, y} (2z = 0 mod 2), p = 3 on the singleton {z}.
    CHECK(!pr::check_mod_p(P, 2).has_value());
    CHECK(!pr::check_mod_p(P, 3).has_value());

    auto found = pr::find_mod_p_obstruction(P, 1000);
    REQUIRE(found.has_value());
    CHECK(found->first == 5);
    revalidate(P, found->second);
    // All 7 nonempty subsets of {e1, e2, e3} are Rado sets.
    CHECK(found->second.condition2_reports.size() == 7);
    CHECK(found->second.constant_solutions.empty());
}

TEST_CASE("no mod-p obstruction exists for provably PR equations") {
    for (const char* text : {"x + y = z", "x + y = 2*z", "x*y = z^2", "x + z^2 = y"}) {
        CAPTURE(text);
        CHECK(!pr::find_mod_p_obstruction(eq(text), 50).has_value());
    }
}

TEST_CASE("equations with z = 1 in a mixed-sign pair never obstruct") {
    // The restricted congruence over {x^2, -z^5} vanishes at z = 1 for every p.
    CHECK(!pr::find_mod_p_obstruction(eq("x^2 + y^3 = z^5"), 100).has_value());
    CHECK(!pr::find_mod_p_obstruction(eq("x^2 + y^2 = z^2"), 100).has_value());
}

TEST_CASE("emitted certificates re-validate (randomized shapes)") {
    std::mt19937_64 rng(211);
    int certified = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto P = oracle::random_polynomial(rng, 3, 3, 4, 3, false);
        if (P.minimal_indices().size() > 12) continue;  // keep the oracle cheap
        auto found = pr::find_mod_p_obstruction(P, 40);
        if (!found) continue;
        ++certified;
        CHECK(found->second.p == found->first);
        revalidate(P, found->second);
    }
    CHECK(certified > 10);  // the sample really exercises the positive path
}

TEST_CASE("maximal homogeneous obstruction on sums of univariate monomials") {
    auto report = pr::maximal_homogeneous_obstruction(eq("x + y = z^2"));
    CHECK(report.certifies_not_pr());
    REQUIRE(report.degree_classes.count(1) == 1);
    REQUIRE(report.degree_classes.count(2) == 1);
    CHECK(report.class_coefficients.at(1) == std::vector<Int>{Int(1), Int(1)});
    CHECK(report.class_coefficients.at(2) == std::vector<Int>{Int(-1)});
    CHECK(report.constant_solutions == std::vector<Int>{Int(2)});

    auto json = pr::maximal_homogeneous_to_json(report);
    CHECK(json.at("type") == "maximal_homogeneous");
    CHECK(json.at("certifies_not_nontrivially_pr") == true);
    CHECK(json.at("constant_solutions") == nlohmann::json::array({"2"}));
}

TEST_CASE("non-maximal indexes are excluded from the degree classes") {
    // In x - 2y - z^2 - z the lone z term sits below z^2 and must not join
    // the length-1 class.
    auto report = pr::maximal_homogeneous_obstruction(eq("x = 2*y + z^2 + z"));
    CHECK(report.certifies_not_pr());
    REQUIRE(report.degree_classes.count(1) == 1);
    CHECK(report.degree_classes.at(1).size() == 2);
    CHECK(report.class_coefficients.at(1) == std::vector<Int>{Int(1), Int(-2)});
    CHECK(report.class_coefficients.at(2) == std::vector<Int>{Int(-1)});
    CHECK(report.constant_solutions.empty());
}

TEST_CASE("a zero-sum class subset blocks the maximal homogeneous certificate") {
    auto report = pr::maximal_homogeneous_obstruction(eq("x + z^2 = y"));
    CHECK(!report.certifies_not_pr());
    REQUIRE(report.zero_sum_subset.has_value());
    CHECK(report.zero_sum_subset->first == 1);
    CHECK(report.zero_sum_subset->second == std::vector<std::size_t>{0, 1});
    auto json = pr::maximal_homogeneous_to_json(report);
    CHECK(json.at("certifies_not_nontrivially_pr") == false);
    CHECK(json.at("zero_sum_subset").at("positions") == nlohmann::json::array({1, 2}));
}

TEST_CASE("maximal homogeneous obstruction rejects other shapes") {
    CHECK_THROWS_AS(pr::maximal_homogeneous_obstruction(eq("x*y = z^2")),
                    std::invalid_argument);
    CHECK_THROWS_AS(pr::maximal_homogeneous_obstruction(eq("x + y = 1")),
                    std::invalid_argument);
    CHECK_THROWS_AS(pr::maximal_homogeneous_obstruction(Polynomial({"x"})),
                    std::invalid_argument);
}

TEST_CASE("degree-grouped classification") {
    auto nnt = pr::degree_grouped_rado(eq("2*x^2 + 3*y^3 = 5*z^4"));
    CHECK(nnt.verdict == Verdict::NotNonTriviallyPR);
    CHECK(nnt.method == "degree_grouped_rado");
    CHECK(nnt.certificate.at("reason") ==
          "no nonempty equal-degree subset of coefficients sums to zero");

    auto open = pr::degree_grouped_rado(eq("x^2 = y^2"));
    CHECK(open.verdict == Verdict::Open);
    CHECK(open.certificate.at("equal_degree_zero_sum").at("degree") == 2);
    CHECK(open.certificate.at("equal_degree_zero_sum").at("variables") ==
          nlohmann::json::array({"x", "y"}));

    // Each variable may appear in only one monomial here.
    CHECK_THROWS_AS(pr::degree_grouped_rado(eq("z^2 + z = x")), std::invalid_argument);
}

TEST_CASE("degree-grouped and maximal homogeneous agree on their shared domain") {
    // One monomial per variable: the maximal indexes are the whole support, so
    // the two obstructions examine identical degree classes.
    std::mt19937_64 rng(223);
    static const std::vector<std::string> names = {"a", "b", "c", "d", "e"};
    std::uniform_int_distribution<int> var_count(1, 5);
    std::uniform_int_distribution<std::int64_t> degree(1, 4);
    std::uniform_int_distribution<int> coeff(-4, 4);
    int certified = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        int n = var_count(rng);
        Polynomial P(std::vector<std::string>(names.begin(), names.begin() + n));
        for (int i = 0; i < n; ++i) {
            int c = coeff(rng);
            if (c == 0) c = 1;
            MultiIndex index(static_cast<std::size_t>(n));
            index[static_cast<std::size_t>(i)] = degree(rng);
            P.add_term(index, c);
        }
        auto grouped = pr::degree_grouped_rado(P);
        auto maximal = pr::maximal_homogeneous_obstruction(P);
        bool nnt = grouped.verdict == Verdict::NotNonTriviallyPR;
        CHECK(nnt == maximal.certifies_not_pr());
        certified += nnt ? 1 : 0;
    }
    CHECK(certified > 100);
    CHECK(certified < 3000);
}

TEST_CASE("homogeneous subset obstruction") {
    auto empty_sums = pr::homogeneous_subset_obstruction(eq("x^2 + y^2 = 0"));
    CHECK(empty_sums.certifies_not_pr());
    CHECK(pr::homogeneous_subset_to_json(empty_sums).at("certifies_not_pr") == true);

    auto balanced = pr::homogeneous_subset_obstruction(eq("x^2 = y^2"));
    CHECK(!balanced.certifies_not_pr());
    CHECK(balanced.zero_sum_subset == std::vector<std::size_t>{0, 1});

    auto pythagorean = pr::homogeneous_subset_obstruction(eq("x^2 + y^2 = z^2"));
    CHECK(!pythagorean.certifies_not_pr());

    CHECK_THROWS_AS(pr::homogeneous_subset_obstruction(eq("x^2 + y = 0")),
                    std::invalid_argument);
    CHECK_THROWS_AS(pr::homogeneous_subset_obstruction(Polynomial({"x"})),
                    std::invalid_argument);
}

TEST_CASE("linear-plus-nonlinear characterization is two-sided") {
    auto pr_side = pr::characterize_linear_plus_nonlinear(eq("x + y + w^3 = 2*z"));
    CHECK(pr_side.verdict == Verdict::ProvablyPR);
    CHECK(pr_side.method == "linear_plus_nonlinear_characterization");
    CHECK(pr_side.certificate.at("J") == nlohmann::json::array({1, 2, 3}));
    REQUIRE(!pr_side.injectivity.empty());
    CHECK(pr_side.injectivity[0].variables == std::vector<std::string>{"x", "y", "z"});
    CHECK(pr_side.injectivity[0].min_distinct == 2);

    auto nnt_side = pr::characterize_linear_plus_nonlinear(eq("x + y + w^2 = 4*z"));
    CHECK(nnt_side.verdict == Verdict::NotNonTriviallyPR);
    // Diagonal c + c + c^2 - 4c = c^2 - 2c: the constant solution c = 2 survives.
    CHECK(nnt_side.certificate.at("constant_solutions") == nlohmann::json::array({"2"}));
}

TEST_CASE("linear-plus-nonlinear shape mismatches redirect to the pipeline") {
    for (const char* text : {
             "x - 2*y = z^2",        // only two linear variables
             "x + y - 2*z + u*w = 0",  // multivariate remainder
             "x + y = 2*z",          // no nonlinear remainder
             "x + y - 2*z + w = 1",  // constant term
         }) {
        CAPTURE(text);
        try {
            pr::characterize_linear_plus_nonlinear(eq(text));
            FAIL("expected std::invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("general pipeline") != std::string::npos);
        }
    }
}

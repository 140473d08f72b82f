#include "pr/family_f.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "pr/parser.hpp"
#include "pr/subset_sum.hpp"

namespace pr {

namespace {

// ---------------------------------------------------------------------------
// Equation-level comparison: two polynomials define the same Diophantine
// equation when they agree up to sign and a positive integer factor.
// ---------------------------------------------------------------------------

Polynomial primitive_part(const Polynomial& P) {
    Int g{0};
    for (const auto& [index, coeff] : P.terms()) g = gcd(g, Int(abs(coeff)));
    if (g <= 1) return P;
    Polynomial out(P.vars(), P.is_laurent());
    for (const auto& [index, coeff] : P.terms()) out.add_term(index, Int(coeff / g));
    return out;
}

bool same_equation(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    Polynomial pa = primitive_part(a);
    Polynomial pb = primitive_part(b);
    return same_polynomial(pa, pb) || same_polynomial(pa, -pb);
}

// ---------------------------------------------------------------------------
// Axiom matchers. All operate on a polynomial re-expressed over exactly its
// occurring variables.
// ---------------------------------------------------------------------------

// For a two-term polynomial with coefficients +1/-1, returns the indices of
// the positive and the negative term.
std::optional<std::pair<MultiIndex, MultiIndex>> two_term_unit(const Polynomial& P) {
    if (P.term_count() != 2) return std::nullopt;
    auto it = P.terms().begin();
    const auto& [i1, c1] = *it;
    ++it;
    const auto& [i2, c2] = *it;
    if (c1 == 1 && c2 == -1) return std::make_pair(i1, i2);
    if (c1 == -1 && c2 == 1) return std::make_pair(i2, i1);
    return std::nullopt;
}

struct ProductMatch {
    std::string head;
    std::vector<std::string> factors;
};

// x - y_1 * ... * y_k (distinct variables, unit exponents), either sign.
std::optional<ProductMatch> match_product(const Polynomial& P) {
    auto tt = two_term_unit(P);
    if (!tt) return std::nullopt;
    const auto orientations = {std::make_pair(tt->first, tt->second),
                               std::make_pair(tt->second, tt->first)};
    for (const auto& [head_side, product_side] : orientations) {
        auto head_positions = head_side.nonzero_positions();
        if (head_positions.size() != 1) continue;
        std::size_t h = head_positions[0];
        if (head_side[h] != 1) continue;
        if (product_side[h] != 0) continue;
        bool unit_exponents = true;
        for (std::size_t v = 0; v < product_side.size(); ++v)
            if (product_side[v] != 0 && product_side[v] != 1) unit_exponents = false;
        if (!unit_exponents) continue;
        auto factor_positions = product_side.nonzero_positions();
        if (factor_positions.empty()) continue;
        ProductMatch m;
        m.head = P.vars()[h];
        for (std::size_t p : factor_positions) m.factors.push_back(P.vars()[p]);
        return m;
    }
    return std::nullopt;
}

struct WeightedMatch {
    std::string head;
    std::vector<std::string> factors;
    std::vector<Int> exponents;  // nonzero, sum to 1
};

// x - prod y_i^{a_i} with sum a_i = 1, stored in monomial-cleared form: the
// ratio vector rho of the two unit terms sums to 0 and the head has rho = 1.
std::optional<WeightedMatch> match_weighted_product(const Polynomial& P) {
    auto tt = two_term_unit(P);
    if (!tt) return std::nullopt;
    const auto& [A, B] = *tt;
    std::int64_t total = 0;
    std::vector<std::int64_t> rho(A.size());
    for (std::size_t v = 0; v < A.size(); ++v) {
        rho[v] = A[v] - B[v];
        total += rho[v];
    }
    if (total != 0) return std::nullopt;
    for (int orientation : {+1, -1}) {
        for (std::size_t h = 0; h < rho.size(); ++h) {
            if (orientation * rho[h] != 1) continue;
            WeightedMatch m;
            m.head = P.vars()[h];
            for (std::size_t v = 0; v < rho.size(); ++v) {
                if (v == h || rho[v] == 0) continue;
                m.factors.push_back(P.vars()[v]);
                m.exponents.push_back(Int(-orientation * rho[v]));
            }
            if (m.factors.size() < 2) continue;  // k = 1 forces x = y: degenerate
            return m;
        }
    }
    return std::nullopt;
}

// Rebuilds the cleared polynomial head - prod factors^{exponents} (negative
// exponents multiply onto the head side).
Polynomial rebuild_weighted(const std::string& head, const std::vector<std::string>& factors,
                            const std::vector<Int>& exponents) {
    std::vector<std::string> vars{head};
    vars.insert(vars.end(), factors.begin(), factors.end());
    Polynomial out(vars);
    MultiIndex head_side(vars.size());
    MultiIndex product_side(vars.size());
    head_side[0] = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (exponents[i] > 0)
            product_side[i + 1] = static_cast<std::int64_t>(exponents[i]);
        else
            head_side[i + 1] = static_cast<std::int64_t>(-exponents[i]);
    }
    out.add_term(head_side, Int(1));
    out.add_term(product_side, Int(-1));
    return out;
}

Polynomial rebuild_product(const std::string& head, const std::vector<std::string>& factors) {
    std::vector<Int> ones(factors.size(), Int(1));
    return rebuild_weighted(head, factors, ones);
}

// ---------------------------------------------------------------------------
// Injectivity bookkeeping.
// ---------------------------------------------------------------------------

std::vector<InjectivityConstraint> full_injectivity(const std::string& head,
                                                    const std::vector<std::string>& factors) {
    std::vector<std::string> all{head};
    all.insert(all.end(), factors.begin(), factors.end());
    return {{all, all.size()}};
}

// Pushing a constraint through a substitution node: a bound of s that does not
// mention the glue variable degrades to s-1; one that does first drops the
// glue (losing one guaranteed distinct value) and then degrades, for s-2.
// Bounds below 2 carry no information and are discarded.
std::vector<InjectivityConstraint> restrict_through_glue(
    const std::vector<InjectivityConstraint>& constraints, const std::string& glue) {
    std::vector<InjectivityConstraint> out;
    for (const auto& c : constraints) {
        std::vector<std::string> vars;
        std::int64_t bound = static_cast<std::int64_t>(c.min_distinct);
        for (const auto& v : c.variables)
            if (v != glue) vars.push_back(v);
        bound -= (vars.size() == c.variables.size()) ? 1 : 2;
        if (bound < 2 || vars.empty()) continue;
        out.push_back({std::move(vars), static_cast<std::size_t>(bound)});
    }
    return out;
}

std::vector<InjectivityConstraint> merge_constraints(std::vector<InjectivityConstraint> a,
                                                     const std::vector<InjectivityConstraint>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::map<std::vector<std::string>, std::size_t> best;
    for (auto& c : a) {
        std::vector<std::string> key = c.variables;
        std::sort(key.begin(), key.end());
        auto [it, inserted] = best.emplace(std::move(key), c.min_distinct);
        if (!inserted) it->second = std::max(it->second, c.min_distinct);
    }
    std::vector<InjectivityConstraint> out;
    for (auto& [vars, bound] : best) out.push_back({vars, bound});
    return out;
}

bool entails(const std::vector<InjectivityConstraint>& derived, const InjectivityConstraint& claim) {
    if (claim.min_distinct <= 1) return true;
    std::set<std::string> claim_vars(claim.variables.begin(), claim.variables.end());
    for (const auto& d : derived) {
        if (d.min_distinct < claim.min_distinct) continue;
        bool subset = true;
        for (const auto& v : d.variables)
            if (!claim_vars.count(v)) subset = false;
        if (subset) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw FamilyFError(path, message);
}

std::vector<std::string> set_difference_names(const std::vector<std::string>& a,
                                              const std::string& removed) {
    std::vector<std::string> out;
    for (const auto& v : a)
        if (v != removed) out.push_back(v);
    return out;
}

bool names_intersect(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> sa(a.begin(), a.end());
    for (const auto& v : b)
        if (sa.count(v)) return true;
    return false;
}

std::vector<InjectivityConstraint> validate_node(const FamilyFCertificate& node,
                                                 const std::string& path);

std::vector<InjectivityConstraint> validate_rado_node(const FamilyFNode& node,
                                                      const Polynomial& Q,
                                                      const std::string& path) {
    auto d = detect_rado_polynomial(Q);
    if (!d)
        fail(path,
             "polynomial is not a Rado polynomial (needs >= 2 disjoint linear variables whose "
             "coefficients contain a zero-sum subset and a remainder without constant term)");
    if (node.rado) {
        if (node.rado->linear_vars != d->linear_vars || node.rado->coefficients != d->coefficients)
            fail(path, "stored decomposition disagrees with the polynomial's linear block");
        if (node.rado->witness_J.empty()) fail(path, "stored witness J is empty");
        Int sum{0};
        for (std::size_t j : node.rado->witness_J) {
            if (j >= d->coefficients.size()) fail(path, "stored witness J indexes out of range");
            sum += d->coefficients[j];
        }
        if (sum != 0) fail(path, "stored witness J is not a zero-sum subset");
        if (!same_polynomial(node.rado->remainder, d->remainder))
            fail(path, "stored remainder disagrees with the polynomial");
    }
    return rado_polynomial_injectivity(*d);
}

std::vector<InjectivityConstraint> validate_product_node(const FamilyFNode& node,
                                                         const Polynomial& Q,
                                                         const std::string& path) {
    std::string head = node.head_variable;
    std::vector<std::string> factors = node.factor_variables;
    if (head.empty()) {
        auto m = match_product(Q);
        if (!m) fail(path, "polynomial does not have the product shape x - y_1*...*y_k");
        head = m->head;
        factors = m->factors;
    } else {
        std::set<std::string> seen(factors.begin(), factors.end());
        if (factors.empty() || seen.size() != factors.size() || seen.count(head))
            fail(path, "product payload must list distinct factors not containing the head");
        if (!same_equation(rebuild_product(head, factors), Q))
            fail(path, "product payload does not reproduce the polynomial");
    }
    if (factors.size() >= 2) return full_injectivity(head, factors);
    return {};
}

std::vector<InjectivityConstraint> validate_weighted_node(const FamilyFNode& node,
                                                          const Polynomial& Q,
                                                          const std::string& path) {
    std::string head = node.head_variable;
    std::vector<std::string> factors = node.factor_variables;
    std::vector<Int> exponents = node.factor_exponents;
    if (head.empty()) {
        auto m = match_weighted_product(Q);
        if (!m)
            fail(path,
                 "polynomial does not have the weighted product shape x - prod y_i^{a_i} with "
                 "sum a_i = 1");
        head = m->head;
        factors = m->factors;
        exponents = m->exponents;
    } else {
        std::set<std::string> seen(factors.begin(), factors.end());
        if (factors.size() < 2 || seen.size() != factors.size() || seen.count(head))
            fail(path, "weighted product payload must list >= 2 distinct factors without the head");
        if (exponents.size() != factors.size())
            fail(path, "weighted product payload exponent count mismatch");
        Int sum{0};
        for (const auto& a : exponents) {
            if (a == 0) fail(path, "weighted product exponents must be nonzero");
            sum += a;
        }
        if (sum != 1) fail(path, "weighted product exponents must sum to 1");
        if (!same_equation(rebuild_weighted(head, factors, exponents), Q))
            fail(path, "weighted product payload does not reproduce the polynomial");
    }
    return full_injectivity(head, factors);
}

std::vector<InjectivityConstraint> validate_substitution_node(const FamilyFNode& node,
                                                              const Polynomial& Q,
                                                              const std::string& path) {
    if (!node.outer || !node.inner) fail(path, "substitution node is missing a child");
    if (node.glue_variable.empty()) fail(path, "substitution node has no glue variable");
    const std::string& glue = node.glue_variable;

    auto derived_outer = validate_node(node.outer, path + ".f");
    auto derived_inner = validate_node(node.inner, path + ".g");

    auto outer_vars = node.outer->poly.occurring_variables();
    if (std::find(outer_vars.begin(), outer_vars.end(), glue) == outer_vars.end())
        fail(path, "glue variable '" + glue + "' does not occur in the outer polynomial");

    // The inner child certifies glue = g: the glue must occur exactly once,
    // alone and linearly, with a unit coefficient.
    const Polynomial& inner_poly = node.inner->poly;
    auto inner_pos = inner_poly.var_position(glue);
    if (!inner_pos) fail(path, "glue variable does not occur in the inner polynomial");
    Int glue_coeff{0};
    Polynomial rest(inner_poly.vars(), inner_poly.is_laurent());
    for (const auto& [index, coeff] : inner_poly.terms()) {
        if (index[*inner_pos] != 0) {
            auto positions = index.nonzero_positions();
            if (positions.size() != 1 || index[*inner_pos] != 1 || glue_coeff != 0)
                fail(path, "inner polynomial must be +-(glue - g) with the glue linear and alone");
            glue_coeff = coeff;
        } else {
            rest.add_term(index, coeff);
        }
    }
    if (glue_coeff != 1 && glue_coeff != -1)
        fail(path, "inner polynomial's glue coefficient must be +-1");
    Polynomial g = -rest;
    if (glue_coeff == -1) g = -g;
    if (g.is_zero()) fail(path, "inner polynomial solves the glue variable to zero");

    auto g_vars = g.occurring_variables();
    if (names_intersect(g_vars, set_difference_names(outer_vars, glue)))
        fail(path, "substituted variables must be disjoint from the outer polynomial's variables");

    Polynomial composite = node.outer->poly.substitute(glue, g);
    if (!same_equation(composite, Q))
        fail(path, "substituting the inner equation into the outer one does not give this node");

    return merge_constraints(restrict_through_glue(derived_outer, glue),
                             restrict_through_glue(derived_inner, glue));
}

std::vector<InjectivityConstraint> validate_reciprocal_node(const FamilyFNode& node,
                                                            const Polynomial& Q,
                                                            const std::string& path) {
    if (!node.child) fail(path, "reciprocal node is missing its child");
    auto derived_child = validate_node(node.child, path + ".child");

    auto child_occ = node.child->poly.occurring_variables();
    if (child_occ.empty()) fail(path, "reciprocal child is constant");
    Polynomial C = node.child->poly.with_variables(child_occ);
    if (C.has_negative_exponent()) fail(path, "reciprocal child must be in polynomial mode");
    auto degree = C.homogeneous_degree();
    if (!degree || *degree < 1) fail(path, "reciprocal child must be homogeneous of degree >= 1");

    auto tr = C.reciprocal_transform();
    if (!same_equation(tr.transformed, Q))
        fail(path, "clearing denominators of child(1/x) does not give this node's polynomial");
    if (node.clearing_degree != 0 && node.clearing_degree != tr.clearing_degree)
        fail(path, "stored clearing degree disagrees with the transform");

    std::set<std::string> node_occ_set;
    for (const auto& v : Q.occurring_variables()) node_occ_set.insert(v);
    std::set<std::string> child_occ_set(child_occ.begin(), child_occ.end());
    if (node_occ_set != child_occ_set)
        fail(path, "reciprocal transform degenerately changes the variable set");

    return derived_child;
}

std::vector<InjectivityConstraint> validate_node(const FamilyFCertificate& node,
                                                 const std::string& path) {
    if (!node) fail(path, "missing certificate node");
    auto occurring = node->poly.occurring_variables();
    if (occurring.empty()) fail(path, "constant polynomial cannot be certified");
    if (node->poly.has_negative_exponent())
        fail(path, "certificate polynomials must be in polynomial mode");
    Polynomial Q = node->poly.with_variables(occurring);

    std::vector<InjectivityConstraint> derived;
    switch (node->rule) {
        case FamilyFRule::RadoPolynomial:
            derived = validate_rado_node(*node, Q, path);
            break;
        case FamilyFRule::Product:
            derived = validate_product_node(*node, Q, path);
            break;
        case FamilyFRule::WeightedProduct:
            derived = validate_weighted_node(*node, Q, path);
            break;
        case FamilyFRule::Substitution:
            derived = validate_substitution_node(*node, Q, path);
            break;
        case FamilyFRule::Reciprocal:
            derived = validate_reciprocal_node(*node, Q, path);
            break;
    }

    for (const auto& claim : node->injectivity)
        if (!entails(derived, claim))
            fail(path, "claimed injectivity (" + std::to_string(claim.min_distinct) +
                           " distinct values) is not entailed by the derived constraints");
    return derived;
}

// ---------------------------------------------------------------------------
// Derivation search.
// ---------------------------------------------------------------------------

struct SearchState {
    std::uint64_t budget;
    bool exhausted = false;
    // Shape of a polynomial that failed to derive, mapped to the highest
    // remaining depth at which it failed.
    std::map<std::string, int> failed;
};

// Name-sorted positional rename + sign normalization; collapses revisits of
// the same polynomial reached with differently numbered glue variables.
std::string shape_key(const Polynomial& P) {
    std::vector<std::string> sorted_vars = P.vars();
    std::sort(sorted_vars.begin(), sorted_vars.end());
    std::vector<std::size_t> rank(P.var_count());
    for (std::size_t v = 0; v < P.var_count(); ++v) {
        auto it = std::lower_bound(sorted_vars.begin(), sorted_vars.end(), P.vars()[v]);
        rank[v] = static_cast<std::size_t>(it - sorted_vars.begin());
    }
    std::vector<std::pair<std::vector<std::pair<std::size_t, std::int64_t>>, Int>> terms;
    for (const auto& [index, coeff] : P.terms()) {
        std::vector<std::pair<std::size_t, std::int64_t>> profile;
        for (std::size_t v : index.nonzero_positions()) profile.emplace_back(rank[v], index[v]);
        std::sort(profile.begin(), profile.end());
        terms.emplace_back(std::move(profile), coeff);
    }
    std::sort(terms.begin(), terms.end());
    bool negate = !terms.empty() && terms.front().second < 0;
    std::ostringstream out;
    for (const auto& [profile, coeff] : terms) {
        out << (negate ? Int(-coeff).str() : coeff.str()) << ':';
        for (const auto& [r, e] : profile) out << r << '^' << e << ',';
        out << ';';
    }
    return out.str();
}

std::string fresh_glue_name(const std::vector<std::string>& taken) {
    std::set<std::string> used(taken.begin(), taken.end());
    for (std::size_t i = 1;; ++i) {
        std::string candidate = "w" + std::to_string(i);
        if (!used.count(candidate)) return candidate;
    }
}

bool is_bare_variable(const Polynomial& P) {
    if (P.term_count() != 1) return false;
    const auto& [index, coeff] = *P.terms().begin();
    if (coeff != 1 && coeff != -1) return false;
    auto positions = index.nonzero_positions();
    return positions.size() == 1 && index[positions[0]] == 1;
}

std::optional<FamilyFCertificate> search(const Polynomial& input, int depth, SearchState& state);

std::optional<FamilyFCertificate> try_axioms(const Polynomial& Q) {
    if (auto d = detect_rado_polynomial(Q)) {
        auto node = std::make_shared<FamilyFNode>(FamilyFRule::RadoPolynomial, Q);
        node->rado = *d;
        node->injectivity = rado_polynomial_injectivity(*d);
        return FamilyFCertificate(node);
    }
    if (auto m = match_product(Q)) {
        auto node = std::make_shared<FamilyFNode>(FamilyFRule::Product, Q);
        node->head_variable = m->head;
        node->factor_variables = m->factors;
        if (m->factors.size() >= 2) node->injectivity = full_injectivity(m->head, m->factors);
        return FamilyFCertificate(node);
    }
    if (auto m = match_weighted_product(Q)) {
        auto node = std::make_shared<FamilyFNode>(FamilyFRule::WeightedProduct, Q);
        node->head_variable = m->head;
        node->factor_variables = m->factors;
        node->factor_exponents = m->exponents;
        node->injectivity = full_injectivity(m->head, m->factors);
        return FamilyFCertificate(node);
    }
    return std::nullopt;
}

// Substitution un-splits: pick a nonempty proper subset S of the terms, pull
// out the componentwise-min monomial m, and require the quotient G to use
// variables disjoint from the rest of the polynomial; then P derives from
// P - S + (+-)m*w together with w - G for a fresh glue variable w.
std::optional<FamilyFCertificate> try_substitutions(const Polynomial& Q, int depth,
                                                    SearchState& state) {
    std::vector<std::pair<MultiIndex, Int>> terms(Q.terms().begin(), Q.terms().end());
    std::size_t T = terms.size();
    if (T < 2 || T > 10) return std::nullopt;

    for (std::size_t s = 1; s < T; ++s) {
        std::vector<std::size_t> comb(s);
        std::iota(comb.begin(), comb.end(), std::size_t{0});
        while (true) {
            if (state.exhausted) return std::nullopt;
            std::vector<bool> in_S(T, false);
            for (std::size_t p : comb) in_S[p] = true;

            MultiIndex m(Q.var_count());
            if (s > 1) {
                m = terms[comb[0]].first;
                for (std::size_t i = 1; i < s; ++i)
                    for (std::size_t v = 0; v < m.size(); ++v)
                        m[v] = std::min(m[v], terms[comb[i]].first[v]);
            }

            Polynomial G_raw(Q.vars());
            for (std::size_t p : comb) {
                MultiIndex reduced = terms[p].first;
                for (std::size_t v = 0; v < reduced.size(); ++v) reduced[v] -= m[v];
                G_raw.add_term(reduced, terms[p].second);
            }
            int sigma = 1;
            if (!G_raw.is_zero() && G_raw.terms().begin()->second < 0) {
                sigma = -1;
                G_raw = -G_raw;
            }
            auto g_vars = G_raw.occurring_variables();
            bool viable = !g_vars.empty() && !is_bare_variable(G_raw);
            if (viable) {
                Polynomial rest(Q.vars());
                for (std::size_t p = 0; p < T; ++p)
                    if (!in_S[p]) rest.add_term(terms[p].first, terms[p].second);
                std::vector<std::string> m_vars;
                for (std::size_t v : m.nonzero_positions()) m_vars.push_back(Q.vars()[v]);
                if (!names_intersect(g_vars, rest.occurring_variables()) &&
                    !names_intersect(g_vars, m_vars)) {
                    std::string glue = fresh_glue_name(Q.vars());
                    std::vector<std::string> ext = Q.vars();
                    ext.push_back(glue);
                    Polynomial outer_poly = rest.with_variables(ext);
                    MultiIndex glue_term(ext.size());
                    for (std::size_t v = 0; v < m.size(); ++v) glue_term[v] = m[v];
                    glue_term[ext.size() - 1] = 1;
                    outer_poly.add_term(glue_term, Int(sigma));

                    std::vector<std::string> inner_vars{glue};
                    inner_vars.insert(inner_vars.end(), g_vars.begin(), g_vars.end());
                    Polynomial inner_poly(inner_vars);
                    MultiIndex glue_only(inner_vars.size());
                    glue_only[0] = 1;
                    inner_poly.add_term(glue_only, Int(1));
                    inner_poly = inner_poly - G_raw;

                    auto outer_cert = search(outer_poly, depth - 1, state);
                    if (outer_cert) {
                        auto inner_cert = search(inner_poly, depth - 1, state);
                        if (inner_cert) {
                            auto node = std::make_shared<FamilyFNode>(FamilyFRule::Substitution, Q);
                            node->outer = *outer_cert;
                            node->inner = *inner_cert;
                            node->glue_variable = glue;
                            node->injectivity = merge_constraints(
                                restrict_through_glue((*outer_cert)->injectivity, glue),
                                restrict_through_glue((*inner_cert)->injectivity, glue));
                            return FamilyFCertificate(node);
                        }
                    }
                }
            }

            // Next s-combination in lexicographic order.
            std::size_t i = s;
            while (i > 0 && comb[i - 1] == T - s + (i - 1)) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < s; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return std::nullopt;
}

// Reciprocal untransform: if Q is homogeneous of degree l over n variables and
// (n-1) divides l, the candidate child is T(Q) / (x_1...x_n)^{(n-2)*l/(n-1)},
// which transforms back onto Q when the move is applicable.
std::optional<FamilyFCertificate> try_reciprocal(const Polynomial& Q, int depth,
                                                 SearchState& state) {
    auto degree = Q.homogeneous_degree();
    std::size_t n = Q.var_count();
    if (!degree || *degree < 1 || n < 2) return std::nullopt;
    std::int64_t l = *degree;
    if (l % static_cast<std::int64_t>(n - 1) != 0) return std::nullopt;
    std::int64_t lc = l / static_cast<std::int64_t>(n - 1);
    std::int64_t shift = static_cast<std::int64_t>(n - 2) * lc;

    Polynomial transformed = Q.reciprocal_transform().transformed;
    Polynomial child_poly(Q.vars());
    for (const auto& [index, coeff] : transformed.terms()) {
        MultiIndex reduced = index;
        for (std::size_t v = 0; v < reduced.size(); ++v) {
            reduced[v] -= shift;
            if (reduced[v] < 0) return std::nullopt;
        }
        child_poly.add_term(reduced, coeff);
    }
    if (child_poly.is_zero()) return std::nullopt;
    auto child_occ = child_poly.occurring_variables();
    if (child_occ.size() != n) return std::nullopt;

    auto roundtrip = child_poly.reciprocal_transform();
    if (!same_equation(roundtrip.transformed, Q)) return std::nullopt;

    auto child_cert = search(child_poly, depth - 1, state);
    if (!child_cert) return std::nullopt;
    auto node = std::make_shared<FamilyFNode>(FamilyFRule::Reciprocal, Q);
    node->child = *child_cert;
    node->clearing_degree = roundtrip.clearing_degree;
    node->injectivity = (*child_cert)->injectivity;
    return FamilyFCertificate(node);
}

std::optional<FamilyFCertificate> search(const Polynomial& input, int depth, SearchState& state) {
    if (state.exhausted) return std::nullopt;
    if (state.budget == 0) {
        state.exhausted = true;
        return std::nullopt;
    }
    --state.budget;

    auto occurring = input.occurring_variables();
    if (occurring.empty()) return std::nullopt;
    Polynomial Q = input.with_variables(occurring);

    if (auto axiom = try_axioms(Q)) return axiom;
    if (depth <= 1) return std::nullopt;

    std::string key = shape_key(Q);
    if (auto it = state.failed.find(key); it != state.failed.end() && it->second >= depth)
        return std::nullopt;

    if (auto cert = try_substitutions(Q, depth, state)) return cert;
    if (auto cert = try_reciprocal(Q, depth, state)) return cert;

    auto [it, inserted] = state.failed.emplace(std::move(key), depth);
    if (!inserted) it->second = std::max(it->second, depth);
    return std::nullopt;
}

}  // namespace

std::string to_string(FamilyFRule rule) {
    switch (rule) {
        case FamilyFRule::RadoPolynomial: return "rado_polynomial";
        case FamilyFRule::Product: return "product";
        case FamilyFRule::WeightedProduct: return "weighted_product";
        case FamilyFRule::Substitution: return "substitution";
        case FamilyFRule::Reciprocal: return "reciprocal";
    }
    return "unknown";
}

FamilyFError::FamilyFError(std::string node_path, const std::string& message)
    : std::runtime_error("family certificate invalid at " + node_path + ": " + message),
      node_path_(std::move(node_path)) {}

Classification validate_family_f(const Polynomial& P, const FamilyFCertificate& cert) {
    if (!cert) throw FamilyFError("root", "null certificate");
    if (!same_equation(P, cert->poly))
        throw FamilyFError("root", "certificate root polynomial does not match the equation");
    auto derived = validate_node(cert, "root");

    Classification result;
    result.verdict = Verdict::ProvablyPR;
    result.method = "family_f";
    result.certificate = {{"type", "family_f"}, {"derivation", family_f_to_json(cert)}};
    result.injectivity = derived;
    if (derived.empty())
        result.notes.push_back(
            "certificate validates with no residual injectivity guarantee (substitution "
            "bookkeeping degraded all bounds below 2)");
    return result;
}

std::optional<FamilyFCertificate> derive_family_f(const Polynomial& P, int max_depth,
                                                  std::uint64_t budget) {
    if (max_depth < 1) throw std::invalid_argument("derive_family_f: max_depth must be >= 1");
    if (P.is_zero() || P.has_negative_exponent()) return std::nullopt;

    SearchState state{budget, false, {}};
    auto cert = search(primitive_part(P), max_depth, state);
    if (!cert) return std::nullopt;
    validate_family_f(P, *cert);  // search/checker coherence: must never throw
    return cert;
}

nlohmann::json family_f_to_json(const FamilyFCertificate& cert) {
    if (!cert) throw std::invalid_argument("family_f_to_json: null certificate");
    nlohmann::json j;
    j["rule"] = to_string(cert->rule);
    j["polynomial"] = cert->poly.format();
    j["variables"] = cert->poly.vars();
    nlohmann::json inj = nlohmann::json::array();
    for (const auto& c : cert->injectivity)
        inj.push_back({{"variables", c.variables}, {"min_distinct", c.min_distinct}});
    j["injectivity"] = inj;

    switch (cert->rule) {
        case FamilyFRule::RadoPolynomial: {
            const auto& d = cert->rado;
            if (d) {
                nlohmann::json coeffs = nlohmann::json::array();
                for (const auto& c : d->coefficients) coeffs.push_back(c.str());
                nlohmann::json witness = nlohmann::json::array();
                for (std::size_t p : d->witness_J) witness.push_back(p + 1);
                j["linear_variables"] = d->linear_vars;
                j["coefficients"] = coeffs;
                j["J"] = witness;
                j["remainder"] = d->remainder.format();
            }
            break;
        }
        case FamilyFRule::Product:
            j["head"] = cert->head_variable;
            j["factors"] = cert->factor_variables;
            break;
        case FamilyFRule::WeightedProduct: {
            nlohmann::json exps = nlohmann::json::array();
            for (const auto& a : cert->factor_exponents) exps.push_back(a.str());
            j["head"] = cert->head_variable;
            j["factors"] = cert->factor_variables;
            j["exponents"] = exps;
            break;
        }
        case FamilyFRule::Substitution:
            j["glue"] = cert->glue_variable;
            j["outer"] = family_f_to_json(cert->outer);
            j["inner"] = family_f_to_json(cert->inner);
            break;
        case FamilyFRule::Reciprocal:
            j["child"] = family_f_to_json(cert->child);
            j["clearing_degree"] = cert->clearing_degree;
            break;
    }
    return j;
}

FamilyFCertificate family_f_from_json(const nlohmann::json& node) {
    std::string rule_name = node.at("rule").get<std::string>();
    FamilyFRule rule;
    if (rule_name == "rado_polynomial")
        rule = FamilyFRule::RadoPolynomial;
    else if (rule_name == "product")
        rule = FamilyFRule::Product;
    else if (rule_name == "weighted_product")
        rule = FamilyFRule::WeightedProduct;
    else if (rule_name == "substitution")
        rule = FamilyFRule::Substitution;
    else if (rule_name == "reciprocal")
        rule = FamilyFRule::Reciprocal;
    else
        throw std::invalid_argument("family_f_from_json: unknown rule '" + rule_name + "'");

    auto vars = node.at("variables").get<std::vector<std::string>>();
    Polynomial poly = parse_polynomial(node.at("polynomial").get<std::string>()).with_variables(vars);
    auto out = std::make_shared<FamilyFNode>(rule, poly);

    for (const auto& c : node.at("injectivity"))
        out->injectivity.push_back({c.at("variables").get<std::vector<std::string>>(),
                                    c.at("min_distinct").get<std::size_t>()});

    switch (rule) {
        case FamilyFRule::RadoPolynomial:
            if (node.contains("linear_variables")) {
                RadoDecomposition d{{}, {}, parse_polynomial(node.at("remainder").get<std::string>())
                                                .with_variables(vars),
                                    {}, {}};
                d.linear_vars = node.at("linear_variables").get<std::vector<std::string>>();
                for (const auto& c : node.at("coefficients"))
                    d.coefficients.emplace_back(c.get<std::string>());
                for (const auto& p : node.at("J"))
                    d.witness_J.push_back(p.get<std::size_t>() - 1);
                d.remainder_vars = d.remainder.occurring_variables();
                out->rado = std::move(d);
            }
            break;
        case FamilyFRule::Product:
            out->head_variable = node.at("head").get<std::string>();
            out->factor_variables = node.at("factors").get<std::vector<std::string>>();
            break;
        case FamilyFRule::WeightedProduct:
            out->head_variable = node.at("head").get<std::string>();
            out->factor_variables = node.at("factors").get<std::vector<std::string>>();
            for (const auto& a : node.at("exponents"))
                out->factor_exponents.emplace_back(a.get<std::string>());
            break;
        case FamilyFRule::Substitution:
            out->glue_variable = node.at("glue").get<std::string>();
            out->outer = family_f_from_json(node.at("outer"));
            out->inner = family_f_from_json(node.at("inner"));
            break;
        case FamilyFRule::Reciprocal:
            out->child = family_f_from_json(node.at("child"));
            out->clearing_degree = node.at("clearing_degree").get<std::int64_t>();
            break;
    }
    return out;
}

}  // namespace pr

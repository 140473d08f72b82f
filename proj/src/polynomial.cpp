#include "pr/polynomial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pr {

namespace {

Int int_pow(const Int& base, std::int64_t e) {
    Int result{1};
    Int b = base;
    std::int64_t n = e;
    while (n > 0) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

Rat rat_pow(const Rat& base, std::int64_t e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("negative power of zero");
        Rat inv = Rat(1) / base;
        return rat_pow(inv, -e);
    }
    Rat result{1};
    Rat b = base;
    std::int64_t n = e;
    while (n > 0) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

}  // namespace

Polynomial::Polynomial(std::vector<std::string> variables, bool laurent)
    : vars_(std::move(variables)), laurent_(laurent) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty()) throw std::invalid_argument("empty variable name");
        if (!seen.insert(v).second)
            throw std::invalid_argument("duplicate variable name: " + v);
    }
}

Polynomial Polynomial::constant(const Int& value) {
    Polynomial p;
    if (value != 0) p.terms_.emplace(MultiIndex{}, value);
    return p;
}

void Polynomial::check_index(const MultiIndex& index) const {
    if (index.size() != vars_.size())
        throw std::invalid_argument("multi-index arity does not match variable count");
    if (!laurent_) {
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index[i] < 0)
                throw std::invalid_argument(
                    "negative exponent in polynomial mode (Laurent mode required)");
    }
}

void Polynomial::add_term(const MultiIndex& index, const Int& coeff) {
    check_index(index);
    if (coeff == 0) return;
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        terms_.emplace(index, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Int Polynomial::coefficient(const MultiIndex& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Int{0} : it->second;
}

Int Polynomial::constant_term() const {
    return coefficient(MultiIndex(vars_.size()));
}

bool Polynomial::has_constant_term() const { return constant_term() != 0; }

bool Polynomial::has_negative_exponent() const {
    for (const auto& [index, coeff] : terms_) {
        (void)coeff;
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index[i] < 0) return true;
    }
    return false;
}

std::optional<std::size_t> Polynomial::var_position(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

std::vector<std::string> Polynomial::occurring_variables() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [index, coeff] : terms_) {
        (void)coeff;
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index[i] != 0) used[i] = true;
    }
    std::vector<std::string> result;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) result.push_back(vars_[i]);
    return result;
}

Polynomial Polynomial::operator-() const {
    Polynomial result = *this;
    for (auto& [index, coeff] : result.terms_) {
        (void)index;
        coeff = -coeff;
    }
    return result;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    if (vars_ != rhs.vars_) {
        auto [a, b] = unify_variables(*this, rhs);
        return a + b;
    }
    Polynomial result(vars_, laurent_ || rhs.laurent_);
    result.terms_ = terms_;
    for (const auto& [index, coeff] : rhs.terms_) result.add_term(index, coeff);
    return result;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (vars_ != rhs.vars_) {
        auto [a, b] = unify_variables(*this, rhs);
        return a * b;
    }
    Polynomial result(vars_, laurent_ || rhs.laurent_);
    for (const auto& [ai, ac] : terms_) {
        for (const auto& [bi, bc] : rhs.terms_) {
            MultiIndex product(vars_.size());
            for (std::size_t k = 0; k < vars_.size(); ++k) product.exps[k] = ai[k] + bi[k];
            result.add_term(product, ac * bc);
        }
    }
    return result;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
    Polynomial result(vars_, laurent_);
    result.add_term(MultiIndex(vars_.size()), 1);
    Polynomial base = *this;
    std::uint32_t n = exponent;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

Int Polynomial::evaluate(const std::vector<Int>& assignment) const {
    if (assignment.size() != vars_.size())
        throw std::invalid_argument("assignment arity does not match variable count");
    if (has_negative_exponent())
        throw std::domain_error(
            "polynomial has negative exponents; use evaluate_rational");
    Int total{0};
    for (const auto& [index, coeff] : terms_) {
        Int term = coeff;
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index[i] != 0) term *= int_pow(assignment[i], index[i]);
        total += term;
    }
    return total;
}

Int Polynomial::evaluate(const std::map<std::string, Int>& assignment) const {
    std::vector<Int> values;
    values.reserve(vars_.size());
    for (const auto& v : vars_) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw std::invalid_argument("missing assignment for variable: " + v);
        values.push_back(it->second);
    }
    return evaluate(values);
}

Rat Polynomial::evaluate_rational(const std::vector<Rat>& assignment) const {
    if (assignment.size() != vars_.size())
        throw std::invalid_argument("assignment arity does not match variable count");
    Rat total{0};
    for (const auto& [index, coeff] : terms_) {
        Rat term{coeff};
        for (std::size_t i = 0; i < index.size(); ++i)
            if (index[i] != 0) term *= rat_pow(assignment[i], index[i]);
        total += term;
    }
    return total;
}

Rat Polynomial::evaluate_rational(const std::map<std::string, Rat>& assignment) const {
    std::vector<Rat> values;
    values.reserve(vars_.size());
    for (const auto& v : vars_) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw std::invalid_argument("missing assignment for variable: " + v);
        values.push_back(it->second);
    }
    return evaluate_rational(values);
}

std::vector<MultiIndex> Polynomial::support() const {
    std::vector<MultiIndex> result;
    result.reserve(terms_.size());
    for (const auto& [index, coeff] : terms_) {
        (void)coeff;
        result.push_back(index);
    }
    return result;
}

std::vector<MultiIndex> Polynomial::minimal_indices() const {
    if (is_zero()) throw std::domain_error("zero polynomial has no minimal indices");
    if (laurent_ && has_negative_exponent())
        throw std::domain_error("minimal indices require polynomial mode");
    std::vector<MultiIndex> supp = support();
    std::vector<MultiIndex> result;
    for (const auto& alpha : supp) {
        bool minimal = true;
        for (const auto& beta : supp) {
            if (strictly_below(beta, alpha)) {
                minimal = false;
                break;
            }
        }
        if (minimal) result.push_back(alpha);
    }
    return result;
}

std::vector<MultiIndex> Polynomial::maximal_indices() const {
    if (is_zero()) throw std::domain_error("zero polynomial has no maximal indices");
    if (laurent_ && has_negative_exponent())
        throw std::domain_error("maximal indices require polynomial mode");
    std::vector<MultiIndex> supp = support();
    std::vector<MultiIndex> result;
    for (const auto& alpha : supp) {
        bool maximal = true;
        for (const auto& beta : supp) {
            if (strictly_below(alpha, beta)) {
                maximal = false;
                break;
            }
        }
        if (maximal) result.push_back(alpha);
    }
    return result;
}

std::optional<std::int64_t> Polynomial::homogeneous_degree() const {
    if (is_zero()) return std::nullopt;
    std::optional<std::int64_t> degree;
    for (const auto& [index, coeff] : terms_) {
        (void)coeff;
        std::int64_t len = index.length();
        if (!degree)
            degree = len;
        else if (*degree != len)
            return std::nullopt;
    }
    return degree;
}

bool Polynomial::is_linear() const {
    for (const auto& [index, coeff] : terms_) {
        (void)coeff;
        std::int64_t len = 0;
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (index[i] < 0) return false;
            len += index[i];
        }
        if (len > 1) return false;
    }
    return true;
}

std::int64_t Polynomial::total_degree() const {
    std::int64_t degree = 0;
    for (const auto& [index, coeff] : terms_) {
        (void)coeff;
        degree = std::max(degree, index.length());
    }
    return degree;
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& replacement) const {
    auto pos = var_position(var);
    bool occurs = false;
    if (pos) {
        for (const auto& [index, coeff] : terms_) {
            (void)coeff;
            if (index[*pos] != 0) {
                occurs = true;
                break;
            }
        }
    }
    if (!pos || !occurs) return *this;

    std::vector<std::string> remaining;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (i != *pos) remaining.push_back(vars_[i]);
    for (const auto& rv : replacement.vars()) {
        if (std::find(remaining.begin(), remaining.end(), rv) != remaining.end())
            throw std::invalid_argument("variable capture: " + rv +
                                        " already occurs in the host polynomial");
    }

    std::vector<std::string> merged = remaining;
    for (const auto& rv : replacement.vars())
        if (std::find(merged.begin(), merged.end(), rv) == merged.end())
            merged.push_back(rv);

    bool result_laurent = laurent_ || replacement.is_laurent();
    Polynomial result(merged, result_laurent);
    Polynomial repl = replacement.with_variables(merged);

    // Cache powers of the replacement: exponents repeat across terms.
    std::map<std::int64_t, Polynomial> powers;
    powers.emplace(0, [&] {
        Polynomial one(merged, result_laurent);
        one.add_term(MultiIndex(merged.size()), 1);
        return one;
    }());

    for (const auto& [index, coeff] : terms_) {
        std::int64_t e = index[*pos];
        if (e < 0)
            throw std::domain_error(
                "cannot substitute into a negative exponent of " + var);
        auto pit = powers.find(e);
        if (pit == powers.end()) {
            Polynomial value = repl.pow(static_cast<std::uint32_t>(e));
            pit = powers.emplace(e, std::move(value)).first;
        }
        // Carry over the remaining exponents of this term.
        Polynomial carried(merged, result_laurent);
        MultiIndex rest(merged.size());
        for (std::size_t i = 0, j = 0; i < vars_.size(); ++i) {
            if (i == *pos) continue;
            rest.exps[j] = index[i];
            ++j;
        }
        carried.add_term(rest, coeff);
        Polynomial contribution = carried * pit->second;
        for (const auto& [ci, cc] : contribution.terms()) result.add_term(ci, cc);
    }
    return result;
}

ReciprocalResult Polynomial::reciprocal_transform() const {
    if (laurent_ && has_negative_exponent())
        throw std::domain_error("reciprocal transform requires polynomial mode");
    auto degree = homogeneous_degree();
    if (!degree)
        throw std::domain_error("reciprocal transform requires a homogeneous polynomial");
    Polynomial result(vars_, false);
    for (const auto& [index, coeff] : terms_) {
        MultiIndex flipped(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) flipped.exps[i] = *degree - index[i];
        result.add_term(flipped, coeff);
    }
    return ReciprocalResult{std::move(result), *degree};
}

DiagonalResult Polynomial::constant_diagonal() const {
    // Collect q(c) = P(c, ..., c) by degree. Laurent inputs would need negative
    // powers of c; restrict to polynomial mode exponents.
    std::map<std::int64_t, Int> by_degree;
    for (const auto& [index, coeff] : terms_) {
        if (laurent_) {
            for (std::size_t i = 0; i < index.size(); ++i)
                if (index[i] < 0)
                    throw std::domain_error("constant diagonal requires polynomial mode");
        }
        by_degree[index.length()] += coeff;
    }
    while (!by_degree.empty() && by_degree.rbegin()->second == 0)
        by_degree.erase(std::prev(by_degree.end()));
    for (auto it = by_degree.begin(); it != by_degree.end();)
        it = (it->second == 0) ? by_degree.erase(it) : std::next(it);

    DiagonalResult diag;
    diag.identically_zero = by_degree.empty();
    if (diag.identically_zero) {
        diag.coeffs = {};
        return diag;
    }
    std::int64_t top = by_degree.rbegin()->first;
    diag.coeffs.assign(static_cast<std::size_t>(top) + 1, Int{0});
    for (const auto& [deg, coeff] : by_degree)
        diag.coeffs[static_cast<std::size_t>(deg)] = coeff;

    // Factor out c^m; remaining positive integer roots divide the trailing
    // (now constant) coefficient, so enumerate its divisors exactly.
    std::int64_t m = by_degree.begin()->first;
    Int trailing = by_degree.begin()->second;
    Int magnitude = trailing < 0 ? Int(-trailing) : trailing;

    auto q_at = [&](const Int& c) {
        Int value{0};
        for (const auto& [deg, coeff] : by_degree)
            value += coeff * int_pow(c, deg - m);
        return value;
    };

    std::vector<Int> roots;
    for (Int d{1}; d * d <= magnitude; ++d) {
        if (magnitude % d != 0) continue;
        Int partner = magnitude / d;
        if (q_at(d) == 0) roots.push_back(d);
        if (partner != d && q_at(partner) == 0) roots.push_back(partner);
    }
    std::sort(roots.begin(), roots.end());
    diag.roots = std::move(roots);
    return diag;
}

std::string Polynomial::format() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [index, coeff] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << coeff.str();
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (index[i] == 0) continue;
            out << "*" << vars_[i];
            if (index[i] != 1) out << "^" << index[i];
        }
    }
    return out.str();
}

Polynomial Polynomial::with_variables(const std::vector<std::string>& new_vars) const {
    Polynomial result(new_vars, laurent_);
    std::vector<std::optional<std::size_t>> target(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
        if (it != new_vars.end())
            target[i] = static_cast<std::size_t>(it - new_vars.begin());
    }
    for (const auto& [index, coeff] : terms_) {
        MultiIndex mapped(new_vars.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (index[i] == 0) continue;
            if (!target[i])
                throw std::invalid_argument("variable " + vars_[i] +
                                            " occurs but is absent from the new list");
            mapped.exps[*target[i]] = index[i];
        }
        result.add_term(mapped, coeff);
    }
    return result;
}

Polynomial Polynomial::renamed(const std::map<std::string, std::string>& mapping) const {
    std::vector<std::string> new_vars;
    new_vars.reserve(vars_.size());
    for (const auto& v : vars_) {
        auto it = mapping.find(v);
        new_vars.push_back(it == mapping.end() ? v : it->second);
    }
    Polynomial result(new_vars, laurent_);
    for (const auto& [index, coeff] : terms_) result.add_term(index, coeff);
    return result;
}

bool same_polynomial(const Polynomial& a, const Polynomial& b) {
    auto canonical = [](const Polynomial& p) {
        std::vector<std::string> occurring = p.occurring_variables();
        std::sort(occurring.begin(), occurring.end());
        return p.with_variables(occurring);
    };
    Polynomial ca = canonical(a);
    Polynomial cb = canonical(b);
    return ca.vars() == cb.vars() && ca.terms() == cb.terms();
}

std::pair<Polynomial, Polynomial> unify_variables(const Polynomial& a, const Polynomial& b) {
    std::vector<std::string> merged = a.vars();
    for (const auto& v : b.vars())
        if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    return {a.with_variables(merged), b.with_variables(merged)};
}

}  // namespace pr

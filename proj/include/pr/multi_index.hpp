#pragma once

#include <cstdint>
#include <vector>

namespace pr {

// Exponent vector of a monomial; one entry per variable of the owning polynomial.
// Entries may be negative when the owner allows Laurent exponents.
struct MultiIndex {
    std::vector<std::int64_t> exps;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : exps(n, 0) {}
    MultiIndex(std::initializer_list<std::int64_t> e) : exps(e) {}

    std::size_t size() const { return exps.size(); }
    std::int64_t operator[](std::size_t i) const { return exps[i]; }
    std::int64_t& operator[](std::size_t i) { return exps[i]; }

    // |alpha|: sum of all entries ("length" of the index).
    std::int64_t length() const;
    bool is_zero() const;
    // Positions with a nonzero exponent.
    std::vector<std::size_t> nonzero_positions() const;

    bool operator==(const MultiIndex&) const = default;
};

// Componentwise partial order.
bool componentwise_leq(const MultiIndex& a, const MultiIndex& b);
// a <= b componentwise and a != b.
bool strictly_below(const MultiIndex& a, const MultiIndex& b);

// Canonical total order on indexes: shorter length first; within one length,
// lexicographically larger exponent vector first (so x precedes y at equal degree).
// Returns negative/zero/positive like a three-way comparison.
int canonical_compare(const MultiIndex& a, const MultiIndex& b);

struct CanonicalLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return canonical_compare(a, b) < 0;
    }
};

} // namespace pr

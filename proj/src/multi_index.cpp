#include "pr/multi_index.hpp"

namespace pr {

std::int64_t MultiIndex::length() const {
    std::int64_t s = 0;
    for (auto e : exps) s += e;
    return s;
}

bool MultiIndex::is_zero() const {
    for (auto e : exps)
        if (e != 0) return false;
    return true;
}

std::vector<std::size_t> MultiIndex::nonzero_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] != 0) out.push_back(i);
    return out;
}

bool componentwise_leq(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool strictly_below(const MultiIndex& a, const MultiIndex& b) {
    return componentwise_leq(a, b) && a != b;
}

int canonical_compare(const MultiIndex& a, const MultiIndex& b) {
    const std::int64_t la = a.length(), lb = b.length();
    if (la != lb) return la < lb ? -1 : 1;
    // Equal length: lexicographically larger vector sorts first.
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
    return 0;
}

} // namespace pr

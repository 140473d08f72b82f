#include "pr/subset_sum.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace pr {

namespace {

constexpr std::size_t kDirectLimit = 20;
constexpr std::size_t kHardLimit = 40;

// Subset sums of `values` indexed by bitmask, built with the low-bit recurrence.
std::vector<Int> all_subset_sums(const std::vector<Int>& values) {
    std::vector<Int> sums(std::size_t{1} << values.size());
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
        sums[mask] = sums[mask & (mask - 1)] + values[low];
    }
    return sums;
}

// sum -> bitmask of achievable subset cardinalities (bit c set when some
// subset of size c attains the sum). Includes the empty subset.
std::unordered_map<Int, std::uint64_t, IntHash> sums_by_count(const std::vector<Int>& values) {
    std::vector<Int> sums = all_subset_sums(values);
    std::unordered_map<Int, std::uint64_t, IntHash> table;
    table.reserve(sums.size());
    for (std::size_t mask = 0; mask < sums.size(); ++mask) {
        int count = std::popcount(mask);
        table[sums[mask]] |= std::uint64_t{1} << count;
    }
    return table;
}

// Does some size-k subset of values[from..] sum to target?
bool suffix_feasible(const std::vector<Int>& values, std::size_t from, std::size_t k,
                     const Int& target) {
    std::size_t len = values.size() - from;
    if (k > len) return false;
    if (k == 0) return target == 0;
    std::size_t half = len / 2;
    std::vector<Int> left(values.begin() + static_cast<std::ptrdiff_t>(from),
                          values.begin() + static_cast<std::ptrdiff_t>(from + half));
    std::vector<Int> right(values.begin() + static_cast<std::ptrdiff_t>(from + half),
                           values.end());
    auto left_table = sums_by_count(left);
    std::vector<Int> right_sums = all_subset_sums(right);
    for (std::size_t mask = 0; mask < right_sums.size(); ++mask) {
        std::size_t count = static_cast<std::size_t>(std::popcount(mask));
        if (count > k) continue;
        auto it = left_table.find(target - right_sums[mask]);
        if (it != left_table.end() && (it->second >> (k - count)) & 1) return true;
    }
    return false;
}

std::optional<std::vector<std::size_t>> zero_sum_direct(const std::vector<Int>& values) {
    std::size_t n = values.size();
    std::vector<std::size_t> combo;
    for (std::size_t size = 1; size <= n; ++size) {
        combo.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) combo[i] = i;
        while (true) {
            Int sum{0};
            for (std::size_t idx : combo) sum += values[idx];
            if (sum == 0) return combo;
            // Advance to the next lexicographic combination of this size.
            std::size_t i = size;
            while (i > 0 && combo[i - 1] == n - size + (i - 1)) --i;
            if (i == 0) break;
            ++combo[i - 1];
            for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    return std::nullopt;
}

// Meet-in-the-middle: bitmask of sizes s such that some size-s subset sums to 0.
std::uint64_t achievable_zero_sizes(const std::vector<Int>& values) {
    std::size_t half = values.size() / 2;
    std::vector<Int> left(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Int> right(values.begin() + static_cast<std::ptrdiff_t>(half), values.end());
    auto left_table = sums_by_count(left);
    std::vector<Int> right_sums = all_subset_sums(right);
    std::uint64_t totals = 0;
    for (std::size_t mask = 0; mask < right_sums.size(); ++mask) {
        auto it = left_table.find(-right_sums[mask]);
        if (it != left_table.end())
            totals |= it->second << std::popcount(mask);
    }
    return totals & ~std::uint64_t{1};  // drop the empty+empty combination
}

}  // namespace

std::optional<std::vector<std::size_t>> zero_sum_subset(const std::vector<Int>& values) {
    std::size_t n = values.size();
    if (n > kHardLimit)
        throw std::length_error("zero_sum_subset supports at most 40 values");
    if (n == 0) return std::nullopt;
    if (n <= kDirectLimit) return zero_sum_direct(values);

    std::uint64_t sizes = achievable_zero_sizes(values);
    if (sizes == 0) return std::nullopt;
    std::size_t best = static_cast<std::size_t>(std::countr_zero(sizes));

    // Greedy lex-first reconstruction: take the earliest position whose
    // removal leaves a feasible completion in the remaining suffix.
    std::vector<std::size_t> chosen;
    Int target{0};
    std::size_t need = best;
    std::size_t p = 0;
    while (need > 0) {
        if (p >= n) throw std::logic_error("zero_sum_subset reconstruction failed");
        if (suffix_feasible(values, p + 1, need - 1, target - values[p])) {
            chosen.push_back(p);
            target -= values[p];
            --need;
        }
        ++p;
    }
    return chosen;
}

bool has_zero_sum_subset(const std::vector<Int>& values) {
    std::size_t n = values.size();
    if (n > kHardLimit)
        throw std::length_error("has_zero_sum_subset supports at most 40 values");
    if (n == 0) return false;
    if (n <= kDirectLimit) return zero_sum_direct(values).has_value();
    return achievable_zero_sizes(values) != 0;
}

}  // namespace pr

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/functional/hash.hpp>

namespace pr {

// Exact integer/rational scalars used throughout. Coefficients, evaluations and
// subset sums must never silently overflow, so everything that can grow is a cpp_int.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct IntHash {
    std::size_t operator()(const Int& v) const { return boost::hash<Int>{}(v); }
};

} // namespace pr

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gridmend {

// Exact arithmetic for ratio comparisons and rho-factors. Doubles convert
// exactly (every finite double is a dyadic rational), so no rounding enters
// between the caller's data and a tie decision.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace gridmend

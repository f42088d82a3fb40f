#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace patrolgame {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Every finite double is a dyadic rational; this conversion is exact.
Rational to_rational(double x);

// The shortest decimal that round-trips to x, as a rational: 0.05 -> 1/20.
// Use this when a double stands for a decimal literal typed by a user.
Rational decimal_rational(double x);

// Parses "p/q", "p" or a decimal literal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace patrolgame

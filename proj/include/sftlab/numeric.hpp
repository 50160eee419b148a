#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sftlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class NumMode { Exact, Float };

// Exact factorial / binomial / multinomial helpers. Everything that feeds a
// ratio identity stays in integer arithmetic.
BigInt factorial(unsigned long n);
BigInt binomial(long n, long k);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Parses "p/q", plain integers, and decimal strings ("0.3" -> 3/10) exactly.
// Decimal inputs are taken at face value, so a caller who needs an irrational
// parameter supplies as many digits as the computation requires.
Rational parse_rational(const std::string& text);

// Lowercase decimal rendering without locale surprises: "p/q" or "p".
std::string rational_to_string(const Rational& q);

// Deterministic double formatting (shortest round-trippable via %.17g).
std::string format_double(double v);

}  // namespace sftlab

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace kecss {

// All arithmetic in the solver is exact. The algorithms branch on equalities
// like x_e = 1 and tightness of cut constraints, so no rounding is tolerable
// anywhere.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p", "-p", "p/q" (q > 0 after normalization) and decimals like
// "0.6". Returns nullopt on anything else.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical form: "p/q", or just "p" when the denominator is 1. Re-parsing
// the result is exact.
std::string format_rational(const Rational& value);

// Ceiling of a/b for b > 0, correct for negative a.
constexpr int ceil_div(int a, int b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace kecss

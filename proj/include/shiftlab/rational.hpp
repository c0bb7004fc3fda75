#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace shiftlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "17", "-0.25", "3/4" into an exact rational. Throws SpecParseError
// on anything else (no floats, no exponents -- exactness is the point).
Rational parse_rational(std::string_view text);

// "6/17", or just "3" for integers.
std::string rational_string(const Rational& value);

// Rounded decimal rendering with a fixed number of significant digits.
// Deterministic: same value, same string.
std::string decimal_string(const Rational& value, int significant_digits = 17);
std::string decimal_string(double value);

// Exponent j when value == 2^j exactly.
std::optional<long long> exact_pow2_exponent(const Rational& value);

double to_double(const Rational& value);
double log2_approx(const Rational& value);  // value must be > 0

bool is_integer(double p);

Int pow_int(const Int& base, long long exp);
Rational pow_rational(const Rational& base, long long exp);  // exp may be negative

// Floor of sqrt for non-negative n.
long long isqrt64(long long n);

}  // namespace shiftlab

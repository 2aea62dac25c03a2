#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace intrec {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) after each arithmetic operation.
using Rational = mpq_class;
/// Arbitrary-precision integer.
using Integer = mpz_class;

using RationalVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Parses "p/q" or "p" (optional sign, surrounding whitespace ignored).
/// Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical textual form: "p/q", or "p" when the value is integral.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

bool is_integral(const Rational& value);
bool is_integral(const RationalVector& values);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Sign as -1, 0 or 1.
int sign_of(const Rational& value);
int sign_of(const Integer& value);

RationalVector to_rational(const IntVector& values);
/// Requires every entry to be integral.
IntVector to_integer(const RationalVector& values);

/// Least common multiple of the denominators (1 for an empty range).
Integer denominator_lcm(const RationalVector& values);

/// Primitive integral vector on the same ray: scales by the denominator lcm
/// and divides by the gcd of the entries. The zero vector maps to zero.
IntVector primitive_integral(const RationalVector& values);

std::string format_vector(const RationalVector& values);
std::string format_vector(const IntVector& values);

}  // namespace intrec

#pragma once
// Exact rationals on top of gmpxx, plus the few integer helpers every
// module needs (factorials, parsing "p/q" strings, parity tests).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace sbo {

using Rational = mpq_class;

// Accepts "3", "-7/2", " 4/6 " (normalized). Throws std::invalid_argument
// on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);
// Integer value if r is an integer fitting in long.
std::optional<long> as_long(const Rational& r);

Rational rpow(const Rational& base, long exponent);
Rational factorial(long n);
Rational binomial(long n, long k);
// Rising factorial (a)_n.
Rational pochhammer(const Rational& a, long n);

double to_double(const Rational& r);

// n/d in canonical form. mpq_class(n, d) does not reduce, and gmp's
// arithmetic assumes reduced operands.
Rational ratio(long n, long d);

}  // namespace sbo

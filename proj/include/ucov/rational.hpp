#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace ucov {

// Exact rational arithmetic for lattice data (ranks, windings, trace
// pairings, dyadic ladder errors). Backed by GMP; every finite double embeds
// losslessly since doubles are dyadic rationals.
using Rational = mpq_class;

// num/den, canonicalized. den must be nonzero.
Rational makeRational(std::int64_t num, std::int64_t den = 1);

// The exact value of d (doubles are dyadic rationals). d must be finite.
Rational rationalFromDouble(double d);

// Accepts "p/q", an integer, or a plain decimal like "0.25" (parsed exactly
// as 25/100). Throws ParseError on anything else.
Rational rationalFromString(const std::string& text);

// Nearest integer, ties toward +infinity. Optionally reports |x - round(x)|.
Rational roundToInteger(const Rational& x, Rational* residual = nullptr);

bool isInteger(const Rational& x);

// Exact value as int64; throws if x is not an integer or out of range.
std::int64_t integerValue(const Rational& x);

// "p/q", or just "p" when the denominator is 1.
std::string toString(const Rational& x);

double toDouble(const Rational& x);

}  // namespace ucov

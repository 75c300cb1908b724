#include "ucov/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "ucov/errors.hpp"

namespace ucov {

Rational makeRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvariantViolation("rational: zero denominator");
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

Rational rationalFromDouble(double d) {
  if (!std::isfinite(d)) throw InvariantViolation("rational: non-finite double");
  return Rational(d);  // mpq_set_d is exact
}

namespace {

bool parseIntegerText(const std::string& s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  out = mpz_class(s, 10);
  return true;
}

}  // namespace

Rational rationalFromString(const std::string& text) {
  auto bad = [&] {
    return ParseError("rational: cannot parse '" + text + "'");
  };
  if (text.empty()) throw bad();

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (!parseIntegerText(text.substr(0, slash), num) ||
        !parseIntegerText(text.substr(slash + 1), den) || den == 0)
      throw bad();
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t fracLen = text.size() - dot - 1;
    if (fracLen == 0 || digits.empty()) throw bad();
    mpz_class num;
    if (!parseIntegerText(digits, num)) throw bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fracLen);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  mpz_class num;
  if (!parseIntegerText(text, num)) throw bad();
  return Rational(num);
}

Rational roundToInteger(const Rational& x, Rational* residual) {
  // floor(x + 1/2): nearest integer, ties toward +infinity
  Rational shifted = x + makeRational(1, 2);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(),
             shifted.get_den().get_mpz_t());
  Rational rounded(q);
  if (residual != nullptr) {
    Rational r = x - rounded;
    *residual = (r < 0) ? Rational(-r) : r;
  }
  return rounded;
}

bool isInteger(const Rational& x) { return x.get_den() == 1; }

std::int64_t integerValue(const Rational& x) {
  if (!isInteger(x)) throw InvariantViolation("rational: not an integer: " + toString(x));
  if (!x.get_num().fits_slong_p())
    throw InvariantViolation("rational: integer out of range: " + toString(x));
  return static_cast<std::int64_t>(x.get_num().get_si());
}

std::string toString(const Rational& x) { return x.get_str(); }

double toDouble(const Rational& x) { return x.get_d(); }

}  // namespace ucov

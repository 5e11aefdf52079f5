#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace starprod {

/// Arbitrary-precision rational scalar. GMP keeps values reduced with a
/// positive denominator, which is exactly the canonical form we need.
using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown by any exact division with a zero divisor.
struct DivisionByZeroError : std::runtime_error {
  DivisionByZeroError() : std::runtime_error("division by zero") {}
  explicit DivisionByZeroError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZeroError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p" or "p/q" with optional sign, base 10.
inline Rational rational_from_string(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  if (r.get_den() == 0) throw DivisionByZeroError("rational with zero denominator: " + text);
  r.canonicalize();
  return r;
}

inline std::string to_decimal_string(const Rational& r) {
  return r.get_str(10);
}

inline Rational factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

}  // namespace starprod

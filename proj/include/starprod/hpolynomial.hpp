#pragma once

#include <string>
#include <utility>
#include <vector>

#include "starprod/rational.hpp"

namespace starprod {

/// Univariate polynomial in the formal deformation parameter h with exact
/// rational coefficients. Coefficients are stored by ascending power and
/// trailing zeros are stripped; the zero polynomial is the empty list.
class HPolynomial {
 public:
  HPolynomial() = default;
  explicit HPolynomial(const Rational& constant);
  explicit HPolynomial(std::vector<Rational> coeffs);

  static HPolynomial hbar();
  static HPolynomial monomial(const Rational& coeff, int power);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;

  /// Degree of the polynomial, -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Power of the lowest nonzero term, -1 for zero.
  int lowest_power() const;

  /// Coefficient of h^k (zero beyond the stored range).
  const Rational& coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  HPolynomial operator-() const;
  HPolynomial operator+(const HPolynomial& rhs) const;
  HPolynomial operator-(const HPolynomial& rhs) const;
  HPolynomial operator*(const HPolynomial& rhs) const;
  HPolynomial operator*(const Rational& scalar) const;
  bool operator==(const HPolynomial& rhs) const { return coeffs_ == rhs.coeffs_; }
  bool operator!=(const HPolynomial& rhs) const { return !(*this == rhs); }

  /// Euclidean division; the divisor must be nonzero.
  static std::pair<HPolynomial, HPolynomial> divide(const HPolynomial& a, const HPolynomial& b);

  /// Monic greatest common divisor; gcd(0, 0) = 0.
  static HPolynomial gcd(const HPolynomial& a, const HPolynomial& b);

  /// Rendering like "2 - 2*h + h^2", for diagnostics and error messages.
  std::string str() const;

 private:
  std::vector<Rational> coeffs_;
  void strip();
};

inline HPolynomial operator*(const Rational& scalar, const HPolynomial& p) { return p * scalar; }

}  // namespace starprod

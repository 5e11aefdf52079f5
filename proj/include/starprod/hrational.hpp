#pragma once

#include <string>
#include <vector>

#include "starprod/hpolynomial.hpp"

namespace starprod {

/// Thrown by expand_series when the value has a pole at h = 0.
struct PoleAtZeroError : std::runtime_error {
  PoleAtZeroError() : std::runtime_error("not expandable: pole at h = 0") {}
};

/// Element of the field Q(h): a reduced ratio of two polynomials in the
/// deformation parameter. Canonical form: numerator and denominator are
/// coprime integer-coefficient polynomials with joint content 1, and the
/// denominator's lowest nonzero coefficient is positive, so equal values
/// are structurally identical.
class HRational {
 public:
  HRational() : num_(), den_(Rational(1)) {}
  HRational(long value) : HRational(Rational(value)) {}
  HRational(const Rational& value);
  explicit HRational(const HPolynomial& num);
  HRational(HPolynomial num, HPolynomial den);

  static HRational hbar() { return HRational(HPolynomial::hbar()); }

  const HPolynomial& num() const { return num_; }
  const HPolynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_ && !num_.is_zero(); }

  HRational operator-() const;
  HRational operator+(const HRational& rhs) const;
  HRational operator-(const HRational& rhs) const;
  HRational operator*(const HRational& rhs) const;
  HRational operator/(const HRational& rhs) const;
  HRational& operator+=(const HRational& rhs) { return *this = *this + rhs; }
  HRational& operator-=(const HRational& rhs) { return *this = *this - rhs; }
  HRational& operator*=(const HRational& rhs) { return *this = *this * rhs; }
  HRational& operator/=(const HRational& rhs) { return *this = *this / rhs; }

  HRational inverse() const;

  /// Exact equality by cross-multiplication of the reduced forms.
  bool operator==(const HRational& rhs) const { return num_ * rhs.den_ == rhs.num_ * den_; }
  bool operator!=(const HRational& rhs) const { return !(*this == rhs); }

  /// Order of the leading h power: lowest_power(num) - lowest_power(den).
  /// Only meaningful for nonzero values.
  int valuation() const;

  /// Taylor coefficients c_0..c_order at h = 0; requires den(0) != 0.
  std::vector<Rational> expand_series(int order) const;

  std::string str() const;

 private:
  HPolynomial num_, den_;
  void normalize();
};

inline HRational operator*(long lhs, const HRational& rhs) { return HRational(lhs) * rhs; }
inline HRational operator*(const Rational& lhs, const HRational& rhs) { return HRational(lhs) * rhs; }

}  // namespace starprod

#include "starprod/hrational.hpp"

#include <sstream>

namespace starprod {

HRational::HRational(const Rational& value) : num_(value), den_(Rational(1)) { normalize(); }

HRational::HRational(const HPolynomial& num) : num_(num), den_(Rational(1)) { normalize(); }

HRational::HRational(HPolynomial num, HPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZeroError("h-rational with zero denominator");
  normalize();
}

void HRational::normalize() {
  if (num_.is_zero()) {
    den_ = HPolynomial(Rational(1));
    return;
  }
  // A nontrivial polynomial gcd needs both sides of positive degree.
  if (num_.degree() > 0 && den_.degree() > 0) {
    HPolynomial g = HPolynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = HPolynomial::divide(num_, g).first;
      den_ = HPolynomial::divide(den_, g).first;
    }
  }
  // Rescale to coprime integer coefficients: clear coefficient denominators,
  // then divide out the joint integer content.
  Integer den_lcm = 1;
  for (const auto& c : num_.coeffs()) den_lcm = lcm(den_lcm, c.get_den());
  for (const auto& c : den_.coeffs()) den_lcm = lcm(den_lcm, c.get_den());
  if (den_lcm != 1) {
    num_ = num_ * Rational(den_lcm);
    den_ = den_ * Rational(den_lcm);
  }
  Integer content = 0;
  for (const auto& c : num_.coeffs()) content = gcd(content, c.get_num());
  for (const auto& c : den_.coeffs()) content = gcd(content, c.get_num());
  if (content > 1) {
    Rational inv_content(Integer(1), content);
    inv_content.canonicalize();
    num_ = num_ * inv_content;
    den_ = den_ * inv_content;
  }
  if (den_.coeff(den_.lowest_power()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

HRational HRational::operator-() const {
  HRational r(*this);
  r.num_ = -r.num_;
  return r;
}

HRational HRational::operator+(const HRational& rhs) const {
  if (den_ == rhs.den_) return HRational(num_ + rhs.num_, den_);
  return HRational(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

HRational HRational::operator-(const HRational& rhs) const {
  if (den_ == rhs.den_) return HRational(num_ - rhs.num_, den_);
  return HRational(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

HRational HRational::operator*(const HRational& rhs) const {
  if (is_zero() || rhs.is_zero()) return HRational();
  return HRational(num_ * rhs.num_, den_ * rhs.den_);
}

HRational HRational::operator/(const HRational& rhs) const {
  if (rhs.is_zero()) throw DivisionByZeroError("h-rational division by zero");
  return HRational(num_ * rhs.den_, den_ * rhs.num_);
}

HRational HRational::inverse() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero h-rational");
  return HRational(den_, num_);
}

int HRational::valuation() const {
  if (is_zero()) return 0;
  return num_.lowest_power() - den_.lowest_power();
}

std::vector<Rational> HRational::expand_series(int order) const {
  if (order < 0) throw std::invalid_argument("negative expansion order");
  if (den_.coeff(0) == 0) throw PoleAtZeroError();
  // Power-series inverse of the denominator, then a Cauchy product.
  const Rational d0 = den_.coeff(0);
  std::vector<Rational> inv(order + 1, Rational(0));
  inv[0] = Rational(1) / d0;
  for (int k = 1; k <= order; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) acc += den_.coeff(j) * inv[k - j];
    inv[k] = -acc / d0;
  }
  std::vector<Rational> out(order + 1, Rational(0));
  for (int k = 0; k <= order; ++k) {
    Rational acc(0);
    for (int j = 0; j <= k; ++j) acc += num_.coeff(j) * inv[k - j];
    out[k] = acc;
  }
  return out;
}

std::string HRational::str() const {
  if (den_.is_one()) return num_.str();
  std::ostringstream out;
  out << "(" << num_.str() << ")/(" << den_.str() << ")";
  return out.str();
}

}  // namespace starprod

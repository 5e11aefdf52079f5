#include "starprod/hpolynomial.hpp"

#include <sstream>

namespace starprod {

namespace {
const Rational kZero = Rational(0);
}

HPolynomial::HPolynomial(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

HPolynomial::HPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

HPolynomial HPolynomial::hbar() { return monomial(Rational(1), 1); }

HPolynomial HPolynomial::monomial(const Rational& coeff, int power) {
  HPolynomial p;
  if (coeff != 0) {
    p.coeffs_.assign(power + 1, Rational(0));
    p.coeffs_[power] = coeff;
  }
  return p;
}

bool HPolynomial::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

int HPolynomial::lowest_power() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return static_cast<int>(k);
  return -1;
}

const Rational& HPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[k];
}

void HPolynomial::strip() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

HPolynomial HPolynomial::operator-() const {
  HPolynomial r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

HPolynomial HPolynomial::operator+(const HPolynomial& rhs) const {
  std::vector<Rational> out(std::max(coeffs_.size(), rhs.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = coeff(static_cast<int>(k)) + rhs.coeff(static_cast<int>(k));
  return HPolynomial(std::move(out));
}

HPolynomial HPolynomial::operator-(const HPolynomial& rhs) const { return *this + (-rhs); }

HPolynomial HPolynomial::operator*(const HPolynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return HPolynomial();
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  return HPolynomial(std::move(out));
}

HPolynomial HPolynomial::operator*(const Rational& scalar) const {
  if (scalar == 0) return HPolynomial();
  HPolynomial r(*this);
  for (auto& c : r.coeffs_) c *= scalar;
  return r;
}

std::pair<HPolynomial, HPolynomial> HPolynomial::divide(const HPolynomial& a, const HPolynomial& b) {
  if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  HPolynomial rem = a;
  std::vector<Rational> quot;
  const int db = b.degree();
  const Rational& lead = b.coeffs_.back();
  while (!rem.is_zero() && rem.degree() >= db) {
    const int shift = rem.degree() - db;
    const Rational factor = rem.coeffs_.back() / lead;
    if (static_cast<int>(quot.size()) < shift + 1) quot.resize(shift + 1, Rational(0));
    quot[shift] += factor;
    rem = rem - monomial(factor, shift) * b;
  }
  return {HPolynomial(std::move(quot)), rem};
}

HPolynomial HPolynomial::gcd(const HPolynomial& a, const HPolynomial& b) {
  if ((!a.is_zero() && a.degree() == 0) || (!b.is_zero() && b.degree() == 0))
    return HPolynomial(Rational(1));
  HPolynomial x = a, y = b;
  while (!y.is_zero()) {
    HPolynomial r = divide(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * (Rational(1) / x.coeffs_.back());
}

std::string HPolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = c > 0 ? c : Rational(-c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c > 0 ? " + " : " - ");
    }
    if (k == 0) {
      out << to_decimal_string(mag);
    } else {
      if (mag != 1) out << to_decimal_string(mag) << "*";
      out << "h";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

}  // namespace starprod

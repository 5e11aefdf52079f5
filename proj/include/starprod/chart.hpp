#pragma once

#include <map>
#include <string>
#include <vector>

#include "starprod/hrational.hpp"

namespace starprod {

/// Element of the localized ring { p / s^m } on the CP^N chart, where p is a
/// polynomial in z^1..z^N, zbar^1..zbar^N over Q(h) and s = 1 + sum z^k zbar^k.
/// The zbar variables are independent formal symbols; no conjugation is
/// modeled. Canonical form: the numerator is not divisible by s, so equal
/// values are structurally identical. The ring is closed under +, * and both
/// partial derivatives.
class ChartFunction {
 public:
  /// Exponent vector: z^1..z^N first, then zbar^1..zbar^N.
  using Monomial = std::vector<int>;

  explicit ChartFunction(int dim) : dim_(dim) {}
  ChartFunction(int dim, std::map<Monomial, HRational> numerator, int s_power);

  static ChartFunction constant(int dim, const HRational& value);
  static ChartFunction monomial(int dim, const Monomial& exponents, const HRational& coeff);
  /// z^coord or zbar^coord (0-based coordinate).
  static ChartFunction variable(int dim, int coord, bool conjugated);
  /// s = 1 + sum_k z^k zbar^k.
  static ChartFunction s_polynomial(int dim);

  int dim() const { return dim_; }
  int s_power() const { return s_power_; }
  const std::map<Monomial, HRational>& numerator() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Sum of many terms with a single lift to the common denominator power
  /// and one canonicalization; the workhorse behind star-product reductions.
  static ChartFunction sum(int dim, const std::vector<ChartFunction>& terms);

  ChartFunction operator-() const;
  ChartFunction operator+(const ChartFunction& rhs) const;
  ChartFunction operator-(const ChartFunction& rhs) const;
  ChartFunction operator*(const ChartFunction& rhs) const;
  ChartFunction operator*(const HRational& scalar) const;
  ChartFunction& operator+=(const ChartFunction& rhs) { return *this = *this + rhs; }
  ChartFunction& operator-=(const ChartFunction& rhs) { return *this = *this - rhs; }

  bool operator==(const ChartFunction& rhs) const {
    return dim_ == rhs.dim_ && s_power_ == rhs.s_power_ && terms_ == rhs.terms_;
  }
  bool operator!=(const ChartFunction& rhs) const { return !(*this == rhs); }

  /// d/dz^k and d/dzbar^k (0-based coordinate).
  ChartFunction d_z(int k) const;
  ChartFunction d_zbar(int k) const;

  /// Evaluation at z = zbar = 0 (where s = 1).
  HRational value_at_origin() const;

  /// Taylor coefficient of h^k: every Q(h) coefficient is expanded at h = 0
  /// and replaced by its k-th series coefficient.
  ChartFunction hbar_coefficient(int k) const;

  /// Smallest h power appearing in any coefficient; 0 for the zero function.
  int hbar_valuation() const;

  std::string str() const;

 private:
  int dim_;
  int s_power_ = 0;
  std::map<Monomial, HRational> terms_;
  void canonicalize();
};

inline ChartFunction operator*(const HRational& scalar, const ChartFunction& f) {
  return f * scalar;
}

/// Symbolic Fubini-Study metric on the CP^N chart. metric_field[p][q] is
/// g_{p qbar} = (d_{pq} s - zbar^p z^q) / s^2 and inverse_metric_field[m][k]
/// is g^{mbar k} = s (d_{km} + zbar^m z^k); their product is verified to be
/// the identity in the localized ring at construction.
struct ChartMetric {
  int dim = 0;
  std::vector<std::vector<ChartFunction>> metric_field;
  std::vector<std::vector<ChartFunction>> inverse_metric_field;
};

ChartMetric cpn_chart_metric(int dim);

}  // namespace starprod

#include "starprod/chart.hpp"

#include <sstream>
#include <stdexcept>

namespace starprod {

namespace {

int total_degree(const ChartFunction::Monomial& m) {
  int deg = 0;
  for (int e : m) deg += e;
  return deg;
}

/// Graded-lexicographic minimum; the order in which exact division by s
/// consumes terms.
bool graded_less(const ChartFunction::Monomial& a, const ChartFunction::Monomial& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

struct GradedLess {
  bool operator()(const ChartFunction::Monomial& a, const ChartFunction::Monomial& b) const {
    return graded_less(a, b);
  }
};

/// Exact division of a numerator polynomial by s = 1 + sum z^k zbar^k.
/// Because the constant term of s is 1, the graded-lex smallest monomial of
/// the remainder must belong to the quotient; termination follows from the
/// bounded total degree. Returns false (leaving poly untouched) when the
/// division is not exact.
bool try_divide_by_s(std::map<ChartFunction::Monomial, HRational>& poly, int dim) {
  if (poly.empty()) return true;
  int max_deg = 0;
  for (const auto& [mono, coeff] : poly) max_deg = std::max(max_deg, total_degree(mono));
  std::map<ChartFunction::Monomial, HRational, GradedLess> rem(poly.begin(), poly.end());
  std::map<ChartFunction::Monomial, HRational> quot;
  while (!rem.empty()) {
    auto min_it = rem.begin();
    const ChartFunction::Monomial mono = min_it->first;
    const HRational coeff = min_it->second;
    if (total_degree(mono) + 2 > max_deg) return false;
    quot[mono] = coeff;
    // Subtract coeff * mono * s.
    rem.erase(min_it);
    for (int k = 0; k < dim; ++k) {
      ChartFunction::Monomial shifted = mono;
      ++shifted[k];
      ++shifted[dim + k];
      auto [it, inserted] = rem.emplace(std::move(shifted), -coeff);
      if (!inserted) {
        it->second -= coeff;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
  }
  poly = std::move(quot);
  return true;
}

}  // namespace

ChartFunction::ChartFunction(int dim, std::map<Monomial, HRational> numerator, int s_power)
    : dim_(dim), s_power_(s_power), terms_(std::move(numerator)) {
  if (s_power < 0) throw std::invalid_argument("negative s power");
  for (const auto& [mono, coeff] : terms_)
    if (static_cast<int>(mono.size()) != 2 * dim)
      throw std::invalid_argument("monomial length must be twice the dimension");
  canonicalize();
}

ChartFunction ChartFunction::constant(int dim, const HRational& value) {
  ChartFunction f(dim);
  if (!value.is_zero()) f.terms_.emplace(Monomial(2 * dim, 0), value);
  return f;
}

ChartFunction ChartFunction::monomial(int dim, const Monomial& exponents, const HRational& coeff) {
  std::map<Monomial, HRational> terms;
  if (!coeff.is_zero()) terms.emplace(exponents, coeff);
  return ChartFunction(dim, std::move(terms), 0);
}

ChartFunction ChartFunction::variable(int dim, int coord, bool conjugated) {
  if (coord < 0 || coord >= dim) throw std::invalid_argument("variable index out of range");
  Monomial m(2 * dim, 0);
  m[conjugated ? dim + coord : coord] = 1;
  return monomial(dim, m, HRational(1));
}

ChartFunction ChartFunction::s_polynomial(int dim) {
  ChartFunction f = constant(dim, HRational(1));
  for (int k = 0; k < dim; ++k) {
    Monomial m(2 * dim, 0);
    m[k] = 1;
    m[dim + k] = 1;
    f.terms_.emplace(std::move(m), HRational(1));
  }
  return f;
}

void ChartFunction::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  if (terms_.empty()) {
    s_power_ = 0;
    return;
  }
  while (s_power_ > 0) {
    auto copy = terms_;
    if (!try_divide_by_s(copy, dim_)) break;
    terms_ = std::move(copy);
    --s_power_;
  }
}

namespace {

using TermMap = std::map<ChartFunction::Monomial, HRational>;

TermMap poly_mul(int dim, const TermMap& a, const TermMap& b) {
  TermMap out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      ChartFunction::Monomial mono = ma;
      for (int j = 0; j < 2 * dim; ++j) mono[j] += mb[j];
      const HRational c = ca * cb;
      auto [it, inserted] = out.emplace(std::move(mono), c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

}  // namespace

ChartFunction ChartFunction::operator-() const {
  ChartFunction out(*this);
  for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
  return out;
}

ChartFunction ChartFunction::sum(int dim, const std::vector<ChartFunction>& terms) {
  int target = 0;
  for (const auto& t : terms) {
    if (t.dim_ != dim) throw std::invalid_argument("chart dimension mismatch");
    if (!t.is_zero()) target = std::max(target, t.s_power_);
  }
  // Powers of s for the lift to the common denominator, built once.
  std::vector<TermMap> s_pow(target + 1);
  s_pow[0] = constant(dim, HRational(1)).terms_;
  for (int k = 1; k <= target; ++k) s_pow[k] = poly_mul(dim, s_pow[k - 1], s_polynomial(dim).terms_);

  TermMap acc;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    const int diff = target - t.s_power_;
    const TermMap lifted = diff == 0 ? t.terms_ : poly_mul(dim, t.terms_, s_pow[diff]);
    for (const auto& [mono, coeff] : lifted) {
      auto [it, inserted] = acc.emplace(mono, coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  }
  return ChartFunction(dim, std::move(acc), target);
}

ChartFunction ChartFunction::operator+(const ChartFunction& rhs) const {
  return sum(dim_, {*this, rhs});
}

ChartFunction ChartFunction::operator-(const ChartFunction& rhs) const { return *this + (-rhs); }

ChartFunction ChartFunction::operator*(const ChartFunction& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("chart dimension mismatch");
  return ChartFunction(dim_, poly_mul(dim_, terms_, rhs.terms_), s_power_ + rhs.s_power_);
}

ChartFunction ChartFunction::operator*(const HRational& scalar) const {
  if (scalar.is_zero()) return ChartFunction(dim_);
  ChartFunction out(*this);
  for (auto& [mono, coeff] : out.terms_) coeff *= scalar;
  return out;
}

ChartFunction ChartFunction::d_z(int k) const {
  if (k < 0 || k >= dim_) throw std::invalid_argument("coordinate out of range");
  std::map<Monomial, HRational> dp;
  for (const auto& [mono, coeff] : terms_) {
    if (mono[k] == 0) continue;
    Monomial m = mono;
    --m[k];
    dp.emplace(std::move(m), coeff * HRational(mono[k]));
  }
  if (s_power_ == 0) return ChartFunction(dim_, std::move(dp), 0);
  // (dp * s - m * p * zbar^k) / s^{m+1}
  ChartFunction out = ChartFunction(dim_, std::move(dp), 0) * s_polynomial(dim_);
  Monomial zbar(2 * dim_, 0);
  zbar[dim_ + k] = 1;
  ChartFunction correction =
      ChartFunction(dim_, terms_, 0) * monomial(dim_, zbar, HRational(s_power_));
  out = out - correction;
  return ChartFunction(dim_, out.terms_, out.s_power_ + s_power_ + 1);
}

ChartFunction ChartFunction::d_zbar(int k) const {
  if (k < 0 || k >= dim_) throw std::invalid_argument("coordinate out of range");
  std::map<Monomial, HRational> dp;
  for (const auto& [mono, coeff] : terms_) {
    if (mono[dim_ + k] == 0) continue;
    Monomial m = mono;
    --m[dim_ + k];
    dp.emplace(std::move(m), coeff * HRational(mono[dim_ + k]));
  }
  if (s_power_ == 0) return ChartFunction(dim_, std::move(dp), 0);
  ChartFunction out = ChartFunction(dim_, std::move(dp), 0) * s_polynomial(dim_);
  Monomial z(2 * dim_, 0);
  z[k] = 1;
  ChartFunction correction = ChartFunction(dim_, terms_, 0) * monomial(dim_, z, HRational(s_power_));
  out = out - correction;
  return ChartFunction(dim_, out.terms_, out.s_power_ + s_power_ + 1);
}

HRational ChartFunction::value_at_origin() const {
  auto it = terms_.find(Monomial(2 * dim_, 0));
  return it == terms_.end() ? HRational() : it->second;
}

ChartFunction ChartFunction::hbar_coefficient(int k) const {
  std::map<Monomial, HRational> out;
  for (const auto& [mono, coeff] : terms_) {
    Rational c = coeff.expand_series(k).back();
    if (c != 0) out.emplace(mono, HRational(c));
  }
  return ChartFunction(dim_, std::move(out), s_power_);
}

int ChartFunction::hbar_valuation() const {
  int best = 0;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    const int v = coeff.valuation();
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

std::string ChartFunction::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << coeff.str() << ")";
    for (int j = 0; j < 2 * dim_; ++j) {
      if (mono[j] == 0) continue;
      out << "*" << (j < dim_ ? "z" : "zb") << (j % dim_) + 1;
      if (mono[j] > 1) out << "^" << mono[j];
    }
  }
  if (s_power_ > 0) {
    std::string body = out.str();
    return "(" + body + ")/s^" + std::to_string(s_power_);
  }
  return out.str();
}

ChartMetric cpn_chart_metric(int dim) {
  if (dim < 1) throw std::invalid_argument("chart dimension must be positive");
  ChartMetric chart;
  chart.dim = dim;
  const ChartFunction s = ChartFunction::s_polynomial(dim);
  chart.metric_field.assign(dim, {});
  chart.inverse_metric_field.assign(dim, {});
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) {
      // g_{p qbar} = (d_{pq} s - zbar^p z^q) / s^2
      ChartFunction::Monomial zz(2 * dim, 0);
      zz[q] += 1;
      zz[dim + p] += 1;
      ChartFunction num = ChartFunction::monomial(dim, zz, HRational(-1));
      if (p == q) num += s;
      chart.metric_field[p].push_back(ChartFunction(dim, num.numerator(), 2));

      // g^{pbar q} = s (d_{pq} + zbar^p z^q)
      ChartFunction::Monomial zz2(2 * dim, 0);
      zz2[q] += 1;
      zz2[dim + p] += 1;
      ChartFunction inner = ChartFunction::monomial(dim, zz2, HRational(1));
      if (p == q) inner += ChartFunction::constant(dim, HRational(1));
      chart.inverse_metric_field[p].push_back(s * inner);
    }

  // metric_field * inverse_metric_field must be the identity exactly.
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) {
      ChartFunction acc(dim);
      for (int l = 0; l < dim; ++l)
        acc += chart.metric_field[p][l] * chart.inverse_metric_field[l][q];
      const ChartFunction expected =
          ChartFunction::constant(dim, p == q ? HRational(1) : HRational());
      if (acc != expected)
        throw std::logic_error("chart metric inverse identity failed");
    }
  return chart;
}

}  // namespace starprod

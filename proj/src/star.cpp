#include "starprod/star.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "starprod/permanent.hpp"

namespace starprod {

ChartFunction d_holo(const ChartFunction& f, int k, const ChartMetric& chart) {
  std::vector<ChartFunction> terms;
  for (int m = 0; m < chart.dim; ++m) {
    ChartFunction df = f.d_zbar(m);
    if (!df.is_zero()) terms.push_back(chart.inverse_metric_field[m][k] * df);
  }
  return ChartFunction::sum(chart.dim, terms);
}

ChartFunction d_antiholo(const ChartFunction& g, int j, const ChartMetric& chart) {
  std::vector<ChartFunction> terms;
  for (int l = 0; l < chart.dim; ++l) {
    ChartFunction dg = g.d_z(l);
    if (!dg.is_zero()) terms.push_back(chart.inverse_metric_field[j][l] * dg);
  }
  return ChartFunction::sum(chart.dim, terms);
}

ChartFunction apply_multi(const ChartFunction& f, const MultiIndex& index, DerivativeKind kind,
                          const ChartMetric& chart) {
  if (!index.valid()) return ChartFunction(chart.dim);
  ChartFunction out = f;
  for (int k = index.dim() - 1; k >= 0; --k)
    for (int rep = 0; rep < index[k]; ++rep) {
      if (out.is_zero()) return out;
      out = kind == DerivativeKind::kHolomorphic ? d_holo(out, k, chart)
                                                 : d_antiholo(out, k, chart);
    }
  return out;
}

StarEvaluator::StarEvaluator(const CoefficientTable& table, const ChartMetric& chart,
                             int truncation_order, ExecPolicy policy)
    : chart_(&chart), order_(truncation_order), policy_(policy), zero_(chart.dim) {
  if (table.manifold().kind != ManifoldKind::kCpn)
    throw std::invalid_argument("star evaluation is defined on projective-space tables only");
  if (table.dim() != chart.dim) throw std::invalid_argument("table/chart dimension mismatch");
  if (truncation_order < 0 || truncation_order > table.max_order())
    throw std::invalid_argument("truncation order exceeds the table's maximum order");

  const int n = chart.dim;
  BlockPermanentEvaluator<ChartFunction> perms(chart.metric_field,
                                               ChartFunction::constant(n, HRational(1)));
  for (int order = 0; order <= order_; ++order) {
    MultiIndex lead(n);
    lead[0] = order;
    const HRational scalar =
        table.lookup(order, lead, lead) * HRational(factorial(order));
    if (scalar.is_zero() && order > 0) continue;  // absent order: contributes nothing
    const auto indices = enumerate_weight(n, order);
    for (const MultiIndex& alpha : indices)
      for (const MultiIndex& beta : indices) {
        ChartFunction perm = perms.eval(alpha, beta);
        if (perm.is_zero()) continue;
        const Rational weights = factorial_product(alpha) * factorial_product(beta);
        coeffs_.emplace(std::make_tuple(order, alpha, beta),
                        perm * (scalar / HRational(weights)));
      }
  }
}

const ChartFunction& StarEvaluator::coefficient(int order, const MultiIndex& alpha,
                                                const MultiIndex& beta) const {
  auto it = coeffs_.find(std::make_tuple(order, alpha, beta));
  return it == coeffs_.end() ? zero_ : it->second;
}

StarResult StarEvaluator::product(const ChartFunction& f, const ChartFunction& g) const {
  const int n = chart_->dim;
  if (f.dim() != n || g.dim() != n) throw std::invalid_argument("operand dimension mismatch");

  // Derivative closures D^alpha f and D^beta g for all weights <= K, each
  // step extending a lower-weight result by one coordinate derivative.
  std::map<MultiIndex, ChartFunction> df, dg;
  df.emplace(MultiIndex(n), f);
  dg.emplace(MultiIndex(n), g);
  for (int w = 1; w <= order_; ++w)
    for (const MultiIndex& idx : enumerate_weight(n, w)) {
      int k = 0;
      while (idx[k] == 0) ++k;
      const ChartFunction& fprev = df.at(idx.minus(k));
      df.emplace(idx, fprev.is_zero() ? fprev : d_holo(fprev, k, *chart_));
      const ChartFunction& gprev = dg.at(idx.minus(k));
      dg.emplace(idx, gprev.is_zero() ? gprev : d_antiholo(gprev, k, *chart_));
    }

  struct Term {
    const ChartFunction* coeff;
    const ChartFunction* left;
    const ChartFunction* right;
  };
  std::vector<Term> terms;
  for (const auto& [key, coeff] : coeffs_) {
    const ChartFunction& left = df.at(std::get<1>(key));
    const ChartFunction& right = dg.at(std::get<2>(key));
    if (!left.is_zero() && !right.is_zero()) terms.push_back({&coeff, &left, &right});
  }

  const int nterms = static_cast<int>(terms.size());
  std::vector<ChartFunction> values(nterms, ChartFunction(n));
  auto compute = [&](int t) {
    // Multiply the two smallest factors first to keep intermediates lean.
    std::array<const ChartFunction*, 3> f{terms[t].coeff, terms[t].left, terms[t].right};
    std::sort(f.begin(), f.end(), [](const ChartFunction* a, const ChartFunction* b) {
      return a->numerator().size() < b->numerator().size();
    });
    values[t] = *f[0] * *f[1] * *f[2];
  };

#ifdef _OPENMP
  if (policy_ == ExecPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < nterms; ++t) compute(t);
  } else
#endif
  {
    for (int t = 0; t < nterms; ++t) compute(t);
  }

  return StarResult{ChartFunction::sum(n, values), order_};
}

StarResult star(const ChartFunction& f, const ChartFunction& g, const CoefficientTable& table,
                int truncation_order, const ChartMetric& chart, ExecPolicy policy) {
  return StarEvaluator(table, chart, truncation_order, policy).product(f, g);
}

UnitCheckReport check_unit(const ChartFunction& f, const CoefficientTable& table,
                           int truncation_order, const ChartMetric& chart) {
  StarEvaluator ev(table, chart, truncation_order);
  const ChartFunction one = ChartFunction::constant(chart.dim, HRational(1));
  UnitCheckReport report;
  for (const ChartFunction& value : {ev.product(f, one).value, ev.product(one, f).value}) {
    const ChartFunction diff = value - f;
    if (diff.is_zero()) continue;
    const int order = diff.hbar_valuation();
    if (report.pass || order < report.first_bad_order) report.first_bad_order = order;
    report.pass = false;
  }
  return report;
}

PoissonCheckReport check_poisson(const ChartFunction& f, const ChartFunction& g,
                                 const CoefficientTable& table, const ChartMetric& chart) {
  StarEvaluator ev(table, chart, 1);
  PoissonCheckReport report{true, ChartFunction(chart.dim), ChartFunction(chart.dim)};
  report.antisymmetric_part =
      (ev.product(f, g).value - ev.product(g, f).value).hbar_coefficient(1);
  std::vector<ChartFunction> terms;
  for (int i = 0; i < chart.dim; ++i)
    for (int l = 0; l < chart.dim; ++l)
      terms.push_back(chart.inverse_metric_field[i][l] *
                      (f.d_zbar(i) * g.d_z(l) - g.d_zbar(i) * f.d_z(l)));
  report.bivector = ChartFunction::sum(chart.dim, terms);
  report.pass = report.antisymmetric_part == report.bivector;
  return report;
}

AssociativityReport check_associativity(const ChartFunction& f, const ChartFunction& g,
                                        const ChartFunction& h, const CoefficientTable& table,
                                        int truncation_order, const ChartMetric& chart,
                                        ExecPolicy policy) {
  StarEvaluator ev(table, chart, truncation_order, policy);
  const ChartFunction left = ev.product(ev.product(f, g).value, h).value;
  const ChartFunction right = ev.product(f, ev.product(g, h).value).value;
  const ChartFunction diff = left - right;
  AssociativityReport report;
  if (diff.is_zero()) return report;
  const int valuation = diff.hbar_valuation();
  if (valuation <= truncation_order) {
    report.pass = false;
    report.first_bad_order = valuation;
  }
  return report;
}

}  // namespace starprod

#pragma once

#include <map>
#include <tuple>

#include "starprod/chart.hpp"
#include "starprod/coeff_table.hpp"
#include "starprod/exec.hpp"

namespace starprod {

enum class DerivativeKind { kHolomorphic, kAntiholomorphic };

/// D^k f = sum_m g^{k mbar} d_zbar^m f. Applied to left factors.
ChartFunction d_holo(const ChartFunction& f, int k, const ChartMetric& chart);

/// D^jbar g = sum_l g^{jbar l} d_z^l g. Applied to right factors.
ChartFunction d_antiholo(const ChartFunction& g, int j, const ChartMetric& chart);

/// Composite operator D^{index} in coordinate order; the factors commute, so
/// the order is immaterial (tested, not assumed). Invalid indices annihilate:
/// the result is the zero function.
ChartFunction apply_multi(const ChartFunction& f, const MultiIndex& index, DerivativeKind kind,
                          const ChartMetric& chart);

struct StarResult {
  ChartFunction value;
  int truncation_order;  // terms of order n > truncation_order are omitted
};

/// Truncated star product on the CP^N chart. The position-dependent
/// coefficients T^n_{alpha,beta}(z,zbar) are assembled once per evaluator:
/// the block permanent of G^{alpha,beta} over the symbolic metric field,
/// divided by the factorial weights, times a per-order scalar read off the
/// table's leading diagonal entry (n e_1, n e_1). For a table that is correct
/// at the origin this scalar is prod_{j=1..n} h/(1+h-hj); a corrupted table
/// shows up directly in the product.
class StarEvaluator {
 public:
  StarEvaluator(const CoefficientTable& table, const ChartMetric& chart, int truncation_order,
                ExecPolicy policy = ExecPolicy::kParallel);

  int truncation_order() const { return order_; }
  const ChartMetric& chart() const { return *chart_; }

  /// T^n_{alpha,beta}(z,zbar); zero function for absent pairs.
  const ChartFunction& coefficient(int order, const MultiIndex& alpha,
                                   const MultiIndex& beta) const;

  StarResult product(const ChartFunction& f, const ChartFunction& g) const;

 private:
  const ChartMetric* chart_;
  int order_;
  ExecPolicy policy_;
  ChartFunction zero_;
  std::map<std::tuple<int, MultiIndex, MultiIndex>, ChartFunction> coeffs_;
};

StarResult star(const ChartFunction& f, const ChartFunction& g, const CoefficientTable& table,
                int truncation_order, const ChartMetric& chart,
                ExecPolicy policy = ExecPolicy::kParallel);

struct UnitCheckReport {
  bool pass = true;
  int first_bad_order = -1;  // lowest differing h order when failing
};

/// f * 1 = 1 * f = f, exactly at every truncation order.
UnitCheckReport check_unit(const ChartFunction& f, const CoefficientTable& table,
                           int truncation_order, const ChartMetric& chart);

struct PoissonCheckReport {
  bool pass = true;
  ChartFunction antisymmetric_part;  // h^1 coefficient of f*g - g*f
  ChartFunction bivector;            // sum g^{ibar l} (d_ibar f d_l g - d_ibar g d_l f)
};

/// First-order antisymmetry: the h^1 part of f*g - g*f must equal the
/// inverse-metric bivector contraction of the first derivatives.
PoissonCheckReport check_poisson(const ChartFunction& f, const ChartFunction& g,
                                 const CoefficientTable& table, const ChartMetric& chart);

struct AssociativityReport {
  bool pass = true;
  int first_bad_order = -1;
};

/// (f*g)*h - f*(g*h) for the order-K truncated product must vanish through
/// h^K componentwise; the defect is O(h^{K+1}).
AssociativityReport check_associativity(const ChartFunction& f, const ChartFunction& g,
                                        const ChartFunction& h, const CoefficientTable& table,
                                        int truncation_order, const ChartMetric& chart,
                                        ExecPolicy policy = ExecPolicy::kParallel);

}  // namespace starprod

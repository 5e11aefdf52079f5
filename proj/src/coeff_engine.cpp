#include "starprod/coeff_engine.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "starprod/permanent.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace starprod {

namespace {

const HRational kHbar = HRational::hbar();

int delta(int a, int b) { return a == b ? 1 : 0; }

/// One recurrence equation restricted to a fixed alpha-block: coefficients
/// over the unknowns T^n_{alpha, beta'} plus the known right side built from
/// order n-1.
struct BlockEquation {
  std::map<MultiIndex, HRational> coeffs;
  HRational rhs;
};

/// Transcribes the order-n equation for coordinate i and target pair
/// (alpha, beta), beta_i >= 1:
///   sum_d h g_{ibar d} T^{n-1}_{alpha-e_d, beta-e_i}
///     = beta_i T^n_{alpha,beta}
///     + sum_{k,p} h (b_k-d_kp-d_ik+1)(b_k-d_kp-d_ik+2)/2 R_pbar^{kbar kbar}_ibar
///         T^n_{alpha, beta-e_p+2e_k-e_i}
///     + sum_{k<k+l,p} h (b_k-d_kp-d_ik+1)(b_{k+l}-d_{(k+l)p}-d_{i(k+l)}+1)
///         R_pbar^{(k+l)bar kbar}_ibar T^n_{alpha, beta-e_p+e_k+e_{k+l}-e_i}.
/// Delta factors and index shifts are kept literally; shifted indices that
/// leave the valid range annihilate their term.
BlockEquation general_equation(const GeometryPoint& g, const CoefficientTable& lower, int order,
                               int i, const MultiIndex& alpha, const MultiIndex& beta) {
  const int n = g.dim();
  BlockEquation eq;

  const MultiIndex beta_prev = beta.minus(i);
  for (int d = 0; d < n; ++d) {
    const HRational& prev = lower.lookup(order - 1, alpha.minus(d), beta_prev);
    if (!prev.is_zero()) eq.rhs += kHbar * g.metric(d, i) * prev;
  }

  eq.coeffs[beta] = HRational(beta[i]);

  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p) {
      const long m = beta[k] - delta(k, p) - delta(i, k) + 1;
      if (m == 0 || m == -1) continue;
      const HRational& r = g.curvature(p, k, k, i);
      if (r.is_zero()) continue;
      const MultiIndex target = beta.shifted({{p, -1}, {k, +1}, {k, +1}, {i, -1}});
      if (!target.valid()) continue;
      eq.coeffs[target] += kHbar * HRational(make_rational(m * (m + 1), 2)) * r;
    }

  for (int k = 0; k + 1 < n; ++k)
    for (int l = 1; k + l < n; ++l) {
      const int kl = k + l;
      for (int p = 0; p < n; ++p) {
        const long f1 = beta[k] - delta(k, p) - delta(i, k) + 1;
        const long f2 = beta[kl] - delta(kl, p) - delta(i, kl) + 1;
        if (f1 == 0 || f2 == 0) continue;
        const HRational& r = g.curvature(p, kl, k, i);
        if (r.is_zero()) continue;
        const MultiIndex target = beta.shifted({{p, -1}, {k, +1}, {kl, +1}, {i, -1}});
        if (!target.valid()) continue;
        eq.coeffs[target] += kHbar * HRational(Rational(f1 * f2)) * r;
      }
    }

  return eq;
}

/// G_{2,2} equation for composite coordinate I (flat 0..3) and pair
/// (alpha, beta), beta_I >= 1. With I = (i,i'), J = (j,j') its full
/// complement and ij', ji' the mixed coordinates:
///   beta_I (1 + h - h beta_I - h beta_{ji'} - h beta_{ij'}) T^n_{alpha,beta}
///     - h (beta_{ij'}+1)(beta_{ji'}+1) T^n_{alpha, beta-e_J+e_{ij'}+e_{ji'}-e_I}
///   = sum_D h g_{Ibar D} T^{n-1}_{alpha-e_D, beta-e_I}.
BlockEquation g22_equation(const GeometryPoint& g, const CoefficientTable& lower, int order,
                           int coord_i, const MultiIndex& alpha, const MultiIndex& beta) {
  const int i = coord_i / 2, i1 = coord_i % 2;
  const int cJ = (1 - i) * 2 + (1 - i1);
  const int cIJ = i * 2 + (1 - i1);  // ij'
  const int cJI = (1 - i) * 2 + i1;  // ji'
  BlockEquation eq;

  const MultiIndex beta_prev = beta.minus(coord_i);
  for (int d = 0; d < 4; ++d) {
    const HRational& prev = lower.lookup(order - 1, alpha.minus(d), beta_prev);
    if (!prev.is_zero()) eq.rhs += kHbar * g.metric(d, coord_i) * prev;
  }

  HRational diag = HRational(1) + kHbar - kHbar * HRational(beta[coord_i]) -
                   kHbar * HRational(beta[cJI]) - kHbar * HRational(beta[cIJ]);
  eq.coeffs[beta] = HRational(beta[coord_i]) * diag;

  const MultiIndex target = beta.shifted({{cJ, -1}, {cIJ, +1}, {cJI, +1}, {coord_i, -1}});
  if (target.valid()) {
    const long f = static_cast<long>(beta[cIJ] + 1) * (beta[cJI] + 1);
    eq.coeffs[target] -= kHbar * HRational(Rational(f));
  }

  return eq;
}

using EquationBuilder = BlockEquation (*)(const GeometryPoint&, const CoefficientTable&, int, int,
                                          const MultiIndex&, const MultiIndex&);

/// Solves one order of a recurrence system block by block (one block per
/// alpha) and writes the nonzero results into the table.
void solve_order(CoefficientTable& table, const GeometryPoint& g, int order,
                 EquationBuilder build, ExecPolicy policy) {
  const int n = g.dim();
  const auto indices = enumerate_weight(n, order);
  const int nblocks = static_cast<int>(indices.size());
  const int ncols = nblocks;

  std::map<MultiIndex, int> beta_pos;
  for (int b = 0; b < ncols; ++b) beta_pos.emplace(indices[b], b);

  std::vector<std::vector<HRational>> solutions(nblocks);
  std::mutex fail_mutex;
  std::optional<RecurrenceSolveError> failure;

  auto process_block = [&](int a) {
    try {
      const MultiIndex& alpha = indices[a];
      HMatrix rows;
      std::vector<HRational> rhs;
      for (int i = 0; i < n; ++i)
        for (const MultiIndex& beta : indices) {
          if (beta[i] < 1) continue;
          BlockEquation eq = build(g, table, order, i, alpha, beta);
          std::vector<HRational> row(ncols, HRational());
          for (const auto& [target, coeff] : eq.coeffs) row[beta_pos.at(target)] = coeff;
          rows.push_back(std::move(row));
          rhs.push_back(std::move(eq.rhs));
        }
      SolveOutcome outcome = solve_exact(std::move(rows), std::move(rhs));
      if (outcome.status != SolveStatus::kUnique) {
        std::ostringstream msg;
        msg << "order " << order << ", block alpha=" << alpha.str() << ": "
            << (outcome.status == SolveStatus::kInconsistent
                    ? "inconsistent system (geometry is not locally symmetric, or the curvature "
                      "convention does not match)"
                    : "rank-deficient system");
        if (outcome.status == SolveStatus::kRankDeficient)
          msg << " with " << outcome.free_variables << " free variable(s)";
        throw RecurrenceSolveError(msg.str(), order, outcome.status, outcome.free_variables);
      }
      solutions[a] = std::move(outcome.solution);
    } catch (const RecurrenceSolveError& e) {
      std::scoped_lock lock(fail_mutex);
      if (!failure) failure = e;
    } catch (const std::exception& e) {
      std::scoped_lock lock(fail_mutex);
      if (!failure)
        failure = RecurrenceSolveError(e.what(), order, SolveStatus::kInconsistent, 0);
    }
  };

#ifdef _OPENMP
  if (policy == ExecPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a < nblocks; ++a) process_block(a);
  } else
#endif
  {
    (void)policy;
    for (int a = 0; a < nblocks; ++a) process_block(a);
  }

  if (failure) throw *failure;

  for (int a = 0; a < nblocks; ++a)
    for (int b = 0; b < ncols; ++b)
      if (!solutions[a][b].is_zero()) table.set(order, indices[a], indices[b], solutions[a][b]);
}

CoefficientTable solve_table(const Manifold& manifold, int max_order, EquationBuilder build,
                             ExecPolicy policy) {
  CoefficientTable table(manifold, max_order);
  const int n = table.dim();
  table.set(0, MultiIndex(n), MultiIndex(n), HRational(1));
  for (int order = 1; order <= max_order; ++order)
    solve_order(table, table.geometry(), order, build, policy);
  return table;
}

}  // namespace

CoefficientTable solve_general(const Manifold& manifold, int max_order, ExecPolicy policy) {
  return solve_table(manifold, max_order, &general_equation, policy);
}

CoefficientTable solve_general(const GeometryPoint& geometry, int max_order, ExecPolicy policy) {
  return solve_general(Manifold::custom(geometry), max_order, policy);
}

CoefficientTable solve_g22(int max_order, ExecPolicy policy) {
  return solve_table(Manifold::grassmann(2, 2), max_order, &g22_equation, policy);
}

HRational coeff_1d(const HRational& g11, const HRational& scalar_r, int order) {
  if (order < 0) throw std::invalid_argument("negative order");
  HRational value(1);
  for (int k = 1; k <= order; ++k) {
    const HRational den =
        HRational(2 * k) + kHbar * HRational(Rational(static_cast<long>(k) * (k - 1))) * scalar_r;
    value *= g11 * (HRational(2) * kHbar) / den;
  }
  return value;
}

HMatrix coeff_2d_order2(const GeometryPoint& g) {
  if (g.dim() != 2) throw std::invalid_argument("coeff_2d_order2 requires a 2-dimensional geometry");
  const auto& m = g.metric_matrix();
  // Metric-product matrix, rows alpha = (2,0),(1,1),(0,2); the entry symbols
  // g_{ibar d} are the metric with unbarred index d, barred index i.
  auto gi = [&](int i, int d) { return m[d][i]; };
  HMatrix prod = {
      {gi(0, 0) * gi(0, 0), gi(0, 0) * gi(1, 0), gi(1, 0) * gi(1, 0)},
      {HRational(2) * gi(0, 0) * gi(0, 1), gi(1, 0) * gi(0, 1) + gi(0, 0) * gi(1, 1),
       HRational(2) * gi(1, 0) * gi(1, 1)},
      {gi(0, 1) * gi(0, 1), gi(1, 0) * gi(1, 1), gi(1, 1) * gi(1, 1)},
  };
  auto rc = [&](int p, int k, int l, int i) { return kHbar * g.curvature(p, k, l, i); };
  HMatrix curv = {
      {HRational(2) + rc(0, 0, 0, 0), rc(1, 0, 0, 0), rc(1, 0, 0, 1)},
      {rc(0, 1, 0, 0), HRational(1) + rc(1, 1, 0, 0), rc(1, 1, 0, 1)},
      {rc(0, 1, 1, 0), rc(1, 1, 1, 0), HRational(2) + rc(1, 1, 1, 1)},
  };
  auto inv = invert_exact(curv);
  if (!inv) throw SingularSystemError("second-order curvature matrix is singular");
  HMatrix out = multiply(prod, *inv);
  const HRational h2 = kHbar * kHbar;
  for (auto& row : out)
    for (auto& v : row) v *= h2;
  return out;
}

CoefficientTable cpn_recurrence(int dim, int max_order) {
  Manifold manifold = Manifold::cpn(dim);
  const GeometryPoint& g = manifold.geometry;
  CoefficientTable table(manifold, max_order);
  table.set(0, MultiIndex(dim), MultiIndex(dim), HRational(1));
  for (int order = 1; order <= max_order; ++order) {
    const HRational scale_den = HRational(1) + kHbar - kHbar * HRational(order);
    const auto indices = enumerate_weight(dim, order);
    for (const MultiIndex& alpha : indices)
      for (const MultiIndex& beta : indices) {
        int i = 0;
        while (beta[i] < 1) ++i;
        HRational acc;
        const MultiIndex beta_prev = beta.minus(i);
        for (int d = 0; d < dim; ++d) {
          const HRational& prev = table.lookup(order - 1, alpha.minus(d), beta_prev);
          if (!prev.is_zero()) acc += kHbar * g.metric(d, i) * prev;
        }
        if (!acc.is_zero())
          table.set(order, alpha, beta, acc / (scale_den * HRational(beta[i])));
      }
  }
  return table;
}

HRational cpn_gamma_coeff(int order) {
  if (order < 0) throw std::invalid_argument("negative order");
  HRational value(1);
  for (int j = 0; j < order; ++j)
    value *= kHbar / (HRational(1) - HRational(j) * kHbar);
  return value / HRational(factorial(order));
}

namespace {

/// prod_{j=1..n} h / (1 + h - h j).
HRational cpn_scalar_product(int order) {
  HRational value(1);
  for (int j = 1; j <= order; ++j)
    value *= kHbar / (HRational(1) + kHbar - kHbar * HRational(j));
  return value;
}

HRational cpn_closed_value(BlockPermanentEvaluator<HRational>& ev, const MultiIndex& alpha,
                           const MultiIndex& beta, const HRational& scalar) {
  const HRational perm = ev.eval(alpha, beta);
  if (perm.is_zero()) return HRational();
  const Rational weights = factorial_product(alpha) * factorial_product(beta);
  return perm * scalar / HRational(weights);
}

}  // namespace

HRational cpn_closed(int dim, const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.weight() != beta.weight())
    throw std::invalid_argument("cpn_closed requires |alpha| = |beta|");
  BlockPermanentEvaluator<HRational> ev(identity_matrix(dim), HRational(1));
  return cpn_closed_value(ev, alpha, beta, cpn_scalar_product(alpha.weight()));
}

CoefficientTable cpn_closed_table(int dim, int max_order, ExecPolicy policy) {
  Manifold manifold = Manifold::cpn(dim);
  CoefficientTable table(manifold, max_order);
  const HMatrix metric = manifold.geometry.metric_matrix();
  for (int order = 0; order <= max_order; ++order) {
    const HRational scalar = cpn_scalar_product(order);
    const auto indices = enumerate_weight(dim, order);
    const int nblocks = static_cast<int>(indices.size());
    std::vector<std::vector<HRational>> values(nblocks);

    auto process_block = [&](BlockPermanentEvaluator<HRational>& ev, int a) {
      values[a].reserve(nblocks);
      for (const MultiIndex& beta : indices)
        values[a].push_back(cpn_closed_value(ev, indices[a], beta, scalar));
    };

#ifdef _OPENMP
    if (policy == ExecPolicy::kParallel) {
#pragma omp parallel
      {
        BlockPermanentEvaluator<HRational> ev(metric, HRational(1));
#pragma omp for schedule(dynamic)
        for (int a = 0; a < nblocks; ++a) process_block(ev, a);
      }
    } else
#endif
    {
      (void)policy;
      BlockPermanentEvaluator<HRational> ev(metric, HRational(1));
      for (int a = 0; a < nblocks; ++a) process_block(ev, a);
    }

    for (int a = 0; a < nblocks; ++a)
      for (int b = 0; b < nblocks; ++b)
        if (!values[a][b].is_zero()) table.set(order, indices[a], indices[b], values[a][b]);
  }
  return table;
}

ResidualReport verify_residual(const CoefficientTable& table, const GeometryPoint& g, int order,
                               ExecPolicy policy) {
  ResidualReport report;
  if (order == 0) {
    // The equations start at order 1; order 0 checks the normalization anchor.
    const HRational t0 = table.lookup(0, MultiIndex(g.dim()), MultiIndex(g.dim()));
    if (!t0.is_one()) {
      report.pass = false;
      report.violations.push_back(
          {0, -1, MultiIndex(g.dim()), MultiIndex(g.dim()), t0 - HRational(1)});
    }
    return report;
  }

  const int n = g.dim();
  const auto indices = enumerate_weight(n, order);
  const int nblocks = static_cast<int>(indices.size());
  std::vector<std::vector<ResidualViolation>> found(nblocks);

  auto process_block = [&](int a) {
    const MultiIndex& alpha = indices[a];
    for (int i = 0; i < n; ++i)
      for (const MultiIndex& beta : indices) {
        if (beta[i] < 1) continue;
        BlockEquation eq = general_equation(g, table, order, i, alpha, beta);
        HRational lhs;
        for (const auto& [target, coeff] : eq.coeffs) {
          const HRational& value = table.lookup(order, alpha, target);
          if (!value.is_zero() && !coeff.is_zero()) lhs += coeff * value;
        }
        HRational residual = lhs - eq.rhs;
        if (!residual.is_zero())
          found[a].push_back({order, i, alpha, beta, std::move(residual)});
      }
  };

#ifdef _OPENMP
  if (policy == ExecPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a < nblocks; ++a) process_block(a);
  } else
#endif
  {
    (void)policy;
    for (int a = 0; a < nblocks; ++a) process_block(a);
  }

  for (auto& block : found)
    for (auto& violation : block) report.violations.push_back(std::move(violation));
  report.pass = report.violations.empty();
  return report;
}

ResidualReport verify_residual_all(const CoefficientTable& table, const GeometryPoint& g,
                                   ExecPolicy policy) {
  ResidualReport report;
  for (int order = 0; order <= table.max_order(); ++order) {
    ResidualReport one = verify_residual(table, g, order, policy);
    for (auto& violation : one.violations) report.violations.push_back(std::move(violation));
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace starprod

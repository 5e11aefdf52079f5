#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starprod/coeff_engine.hpp"
#include "starprod/permanent.hpp"

using namespace starprod;

namespace {

const HRational h = HRational::hbar();

HRational hr(long num, long den = 1) { return HRational(make_rational(num, den)); }

MultiIndex level(int dim, int n) {
  MultiIndex idx(dim);
  idx[0] = n;
  return idx;
}

/// Curvature array with every entry zero except those set through at().
struct CurvBuilder {
  int dim;
  std::vector<HRational> data;
  explicit CurvBuilder(int n) : dim(n), data(static_cast<std::size_t>(n) * n * n * n) {}
  HRational& at(int p, int k, int l, int i) {
    return data[((static_cast<std::size_t>(p) * dim + k) * dim + l) * dim + i];
  }
};

}  // namespace

TEST_CASE("base coefficients for every built-in geometry") {
  std::vector<Manifold> manifolds;
  for (int n = 1; n <= 3; ++n) manifolds.push_back(Manifold::cpn(n));
  manifolds.push_back(Manifold::grassmann(2, 2));
  manifolds.push_back(Manifold::one_dim(hr(1), hr(-2)));
  manifolds.push_back(Manifold::one_dim(hr(2), hr(-2)));
  manifolds.push_back(Manifold::one_dim(hr(1), hr(0)));

  for (const Manifold& m : manifolds) {
    const int dim = m.geometry.dim();
    const CoefficientTable table = solve_general(m, 1);
    CHECK(table.lookup(0, MultiIndex(dim), MultiIndex(dim)) == HRational(1));
    for (int d = 0; d < dim; ++d)
      for (int i = 0; i < dim; ++i)
        CHECK(table.lookup(1, MultiIndex::unit(dim, d), MultiIndex::unit(dim, i)) ==
              h * m.geometry.metric(i, d));
  }
}

TEST_CASE("one-dimensional closed form examples") {
  CHECK(coeff_1d(hr(1), hr(-2), 0) == HRational(1));
  CHECK(coeff_1d(hr(1), hr(-2), 1) == h);
  CHECK(coeff_1d(hr(3), hr(-2), 1) == h * hr(3));
  // T^2 = h^2/(2(1-h)) and T^3 = h^3/(6(1-h)(1-2h)) at g = 1, R = -2.
  const HRational one_minus_h = HRational(1) - h;
  CHECK(coeff_1d(hr(1), hr(-2), 2) == h * h / (hr(2) * one_minus_h));
  CHECK(coeff_1d(hr(1), hr(-2), 3) ==
        h * h * h / (hr(6) * one_minus_h * (HRational(1) - hr(2) * h)));
}

TEST_CASE("one-dimensional triangulation against the general solver") {
  for (const HRational& g : {hr(1), hr(2)})
    for (const HRational& r : {hr(-2), hr(0), hr(3, 5)}) {
      const CoefficientTable table = solve_general(Manifold::one_dim(g, r), 8);
      for (int n = 0; n <= 8; ++n)
        CHECK(table.lookup(n, level(1, n), level(1, n)) == coeff_1d(g, r, n));
    }
}

TEST_CASE("projective gamma-ratio scalar") {
  CHECK(cpn_gamma_coeff(0) == HRational(1));
  CHECK(cpn_gamma_coeff(1) == h);
  CHECK(cpn_gamma_coeff(2) == h * h / (hr(2) * (HRational(1) - h)));
}

TEST_CASE("three closed forms agree on the projective line") {
  for (int n = 0; n <= 8; ++n) {
    const HRational gamma = cpn_gamma_coeff(n);
    CHECK(coeff_1d(hr(1), hr(-2), n) == gamma);
    CHECK(cpn_closed(1, level(1, n), level(1, n)) == gamma);
  }
}

TEST_CASE("projective closed form examples") {
  const int dim = 3;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      CHECK(cpn_closed(dim, MultiIndex::unit(dim, i), MultiIndex::unit(dim, j)) ==
            (i == j ? h : HRational()));
  CHECK(cpn_closed(2, MultiIndex(2), MultiIndex(2)) == HRational(1));
  CHECK_THROWS_AS(cpn_closed(2, MultiIndex({1, 0}), MultiIndex({1, 1})), std::invalid_argument);
}

TEST_CASE("projective recurrence examples and well-definedness") {
  const CoefficientTable t1 = cpn_recurrence(1, 3);
  CHECK(t1.lookup(2, level(1, 2), level(1, 2)) == h * h / (hr(2) * (HRational(1) - h)));

  for (int dim = 1; dim <= 3; ++dim) {
    const int max_order = 4;
    const CoefficientTable table = cpn_recurrence(dim, max_order);
    const GeometryPoint& g = table.geometry();
    // Every admissible choice of the distinguished coordinate i gives the
    // same value, using lower-order entries of the same table.
    for (int n = 1; n <= max_order; ++n)
      for (const MultiIndex& alpha : enumerate_weight(dim, n))
        for (const MultiIndex& beta : enumerate_weight(dim, n)) {
          const HRational scale_den = HRational(1) + h - h * HRational(n);
          for (int i = 0; i < dim; ++i) {
            if (beta[i] < 1) continue;
            HRational acc;
            for (int d = 0; d < dim; ++d) {
              const HRational& prev = table.lookup(n - 1, alpha.minus(d), beta.minus(i));
              if (!prev.is_zero()) acc += h * g.metric(d, i) * prev;
            }
            CHECK(acc / (scale_den * HRational(beta[i])) == table.lookup(n, alpha, beta));
          }
        }
  }
}

TEST_CASE("triangulation of the three projective methods at small order") {
  for (int dim = 1; dim <= 2; ++dim) {
    const CoefficientTable general = solve_general(Manifold::cpn(dim), 3);
    const CoefficientTable closed = cpn_closed_table(dim, 3);
    const CoefficientTable recur = cpn_recurrence(dim, 3);
    CHECK(general == closed);
    CHECK(general == recur);
  }
}

TEST_CASE("second-order coefficients of two-dimensional geometries") {
  // Flat geometry: the curvature matrix is diag(2,1,2).
  {
    std::vector<HRational> zero_curv(16, HRational());
    const GeometryPoint flat = custom_geometry(identity_matrix(2), zero_curv);
    const HMatrix t2 = coeff_2d_order2(flat);
    CHECK(t2[0][0] == h * h / hr(2));
    CHECK(t2[1][1] == h * h);
    CHECK(t2[2][2] == h * h / hr(2));
    CHECK(t2[0][1].is_zero());
    CHECK(t2[1][0].is_zero());
  }

  // Against the general solver, for CP^2 and a flat scaled metric.
  {
    std::vector<HRational> zero_curv(16, HRational());
    HMatrix metric{{hr(2), HRational()}, {HRational(), hr(3)}};
    const std::vector<GeometryPoint> geoms = {cpn_geometry(2),
                                              custom_geometry(metric, zero_curv)};
    const std::vector<MultiIndex> order2 = {MultiIndex({2, 0}), MultiIndex({1, 1}),
                                            MultiIndex({0, 2})};
    for (const GeometryPoint& g : geoms) {
      const HMatrix t2 = coeff_2d_order2(g);
      const CoefficientTable table = solve_general(g, 2);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(t2[a][b] == table.lookup(2, order2[a], order2[b]));
    }
  }

  // Swap symmetry: relabeling the two coordinates permutes the matrix.
  {
    const HMatrix t2 = coeff_2d_order2(cpn_geometry(2));
    CHECK(t2[0][0] == t2[2][2]);
    CHECK(t2[0][1] == t2[2][1]);
    CHECK(t2[1][0] == t2[1][2]);
  }

  // A constant non-diagonal metric with zero curvature is still locally
  // symmetric; off-diagonal entries catch any transposition slip in the
  // metric-product matrix.
  {
    HMatrix metric{{hr(2), hr(1)}, {hr(1), hr(1)}};
    const GeometryPoint skew = custom_geometry(metric, std::vector<HRational>(16, HRational()));
    const HMatrix t2 = coeff_2d_order2(skew);
    const CoefficientTable table = solve_general(skew, 3);
    CHECK(verify_residual_all(table, skew).pass);
    const std::vector<MultiIndex> order2 = {MultiIndex({2, 0}), MultiIndex({1, 1}),
                                            MultiIndex({0, 2})};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(t2[a][b] == table.lookup(2, order2[a], order2[b]));
  }

  // Singular curvature matrix: first column vanishes when R_1^{11}_1 = -2/h.
  {
    CurvBuilder c(2);
    c.at(0, 0, 0, 0) = HRational(HPolynomial(Rational(-2)), HPolynomial::hbar());
    const GeometryPoint g = custom_geometry(identity_matrix(2), c.data);
    CHECK_THROWS_AS(coeff_2d_order2(g), SingularSystemError);
  }

  CHECK_THROWS_AS(coeff_2d_order2(cpn_geometry(3)), std::invalid_argument);
}

TEST_CASE("gamma form consistency on higher-dimensional projective spaces") {
  // Dense permanent over explicit index tuples, matching factorial weights.
  std::mt19937 rng(2025);
  for (int dim = 2; dim <= 3; ++dim) {
    const GeometryPoint g = cpn_geometry(dim);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    for (int n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 8; ++trial) {
        std::vector<int> ks, ms;
        MultiIndex alpha(dim), beta(dim);
        for (int t = 0; t < n; ++t) {
          ks.push_back(pick(rng));
          ms.push_back(pick(rng));
          ++alpha[ks.back()];
          ++beta[ms.back()];
        }
        HMatrix dense(n, std::vector<HRational>(n));
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) dense[a][b] = g.metric(ks[a], ms[b]);
        const HRational weights(factorial_product(alpha) * factorial_product(beta));
        const HRational nfact(factorial(n));
        CHECK(cpn_closed(dim, alpha, beta) * weights ==
              cpn_gamma_coeff(n) * nfact * plus_det(dense));
      }
  }
}

TEST_CASE("residual verifier certifies and rejects") {
  const Manifold cp2 = Manifold::cpn(2);
  CoefficientTable table = solve_general(cp2, 3);
  CHECK(verify_residual_all(table, cp2.geometry).pass);

  // The closed form satisfies the same equations, order by order.
  const CoefficientTable closed = cpn_closed_table(2, 4);
  for (int n = 0; n <= 4; ++n) CHECK(verify_residual(closed, cp2.geometry, n).pass);

  // A single perturbed entry must be flagged with a nonzero residual.
  const MultiIndex a({1, 1});
  table.set(2, a, a, table.lookup(2, a, a) + HRational(1));
  const ResidualReport report = verify_residual(table, cp2.geometry, 2);
  CHECK_FALSE(report.pass);
  CHECK(!report.violations.empty());
  for (const auto& v : report.violations) CHECK(!v.residual.is_zero());
}

TEST_CASE("order-0 anchor is part of the residual contract") {
  CoefficientTable table = solve_general(Manifold::cpn(1), 1);
  table.set(0, MultiIndex(1), MultiIndex(1), hr(2));
  CHECK_FALSE(verify_residual_all(table, table.geometry()).pass);
}

TEST_CASE("non-locally-symmetric curvature is reported as inconsistent") {
  CurvBuilder c(2);
  // Projective curvature with one diagonal component detuned.
  const GeometryPoint cp2 = cpn_geometry(2);
  for (int p = 0; p < 2; ++p)
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i) c.at(p, k, l, i) = cp2.curvature(p, k, l, i);
  c.at(0, 0, 0, 0) = hr(-3);
  const GeometryPoint bad = custom_geometry(identity_matrix(2), c.data);
  CHECK_THROWS_AS(solve_general(bad, 3), RecurrenceSolveError);
  try {
    solve_general(bad, 3);
  } catch (const RecurrenceSolveError& e) {
    CHECK(e.status == SolveStatus::kInconsistent);
  }
}

TEST_CASE("exact solver reports rank deficiency with the free-variable count") {
  const HMatrix a{{hr(1), hr(1)}, {hr(2), hr(2)}};
  const SolveOutcome deficient = solve_exact(a, {hr(1), hr(2)});
  CHECK(deficient.status == SolveStatus::kRankDeficient);
  CHECK(deficient.free_variables == 1);

  const SolveOutcome inconsistent = solve_exact(a, {hr(1), hr(3)});
  CHECK(inconsistent.status == SolveStatus::kInconsistent);

  const SolveOutcome unique = solve_exact(HMatrix{{hr(1), hr(1)}, {hr(1), hr(-1)}}, {h, h});
  CHECK(unique.status == SolveStatus::kUnique);
  CHECK(unique.solution == std::vector<HRational>{h, HRational()});
}

TEST_CASE("rectangular grassmannians solve consistently") {
  // The overdetermined system is only solvable when the curvature data is
  // genuinely locally symmetric, so a clean solve plus residual pass
  // certifies the composite-index construction beyond the square case.
  for (const auto& [p, q] : {std::pair{2, 3}, std::pair{3, 2}}) {
    const Manifold m = Manifold::grassmann(p, q);
    const CoefficientTable table = solve_general(m, 2);
    CHECK(verify_residual_all(table, m.geometry).pass);
    CHECK(table.lookup(1, MultiIndex::unit(6, 2), MultiIndex::unit(6, 2)) == h);
  }
}

TEST_CASE("g22 recurrence equals the general solver entrywise") {
  const CoefficientTable recurrence = solve_g22(3);
  const CoefficientTable general = solve_general(Manifold::grassmann(2, 2), 3);
  CHECK(recurrence == general);
}

TEST_CASE("grassmann g22 recurrence") {
  const CoefficientTable table = solve_g22(2);
  CHECK(table.lookup(0, MultiIndex(4), MultiIndex(4)) == HRational(1));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(table.lookup(1, MultiIndex::unit(4, a), MultiIndex::unit(4, b)) ==
            (a == b ? h : HRational()));

  const GeometryPoint g22 = grassmann_geometry(2, 2);
  for (int n = 0; n <= 2; ++n) CHECK(verify_residual(table, g22, n).pass);
}

TEST_CASE("table lookups annihilate invalid and absent keys") {
  const CoefficientTable table = solve_general(Manifold::cpn(2), 2);
  CHECK(table.lookup(1, MultiIndex({1, -1}), MultiIndex({1, 0})).is_zero());
  CHECK(table.lookup(2, MultiIndex({2, 0}), MultiIndex({0, 2})).is_zero());
  CHECK(table.lookup(7, MultiIndex({7, 0}), MultiIndex({7, 0})).is_zero());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starprod/coeff_engine.hpp"
#include "starprod/star.hpp"

using namespace starprod;

namespace {

const HRational h = HRational::hbar();

ChartFunction var(int dim, int coord, bool conj = false) {
  return ChartFunction::variable(dim, coord, conj);
}

ChartFunction random_polynomial(std::mt19937& rng, int dim, int max_degree) {
  std::uniform_int_distribution<int> exp(0, max_degree), coeff(-3, 3), nterms(1, 3);
  ChartFunction f(dim);
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    ChartFunction::Monomial m(2 * dim, 0);
    int budget = max_degree;
    for (int j = 0; j < 2 * dim; ++j) {
      m[j] = std::min(exp(rng), budget);
      budget -= m[j];
    }
    f += ChartFunction::monomial(dim, m, HRational(coeff(rng)));
  }
  return f;
}

ChartFunction random_monomial(std::mt19937& rng, int dim, int max_degree, bool conjugated) {
  std::uniform_int_distribution<int> exp(0, max_degree);
  ChartFunction::Monomial m(2 * dim, 0);
  int budget = max_degree;
  for (int j = 0; j < dim; ++j) {
    const int e = std::min(exp(rng), budget);
    m[conjugated ? dim + j : j] = e;
    budget -= e;
  }
  return ChartFunction::monomial(dim, m, HRational(1));
}

}  // namespace

TEST_CASE("coordinate operator examples on the projective line") {
  const ChartMetric chart = cpn_chart_metric(1);
  const ChartFunction z = var(1, 0), zbar = var(1, 0, true);
  const ChartFunction s = ChartFunction::s_polynomial(1);

  CHECK(d_holo(z, 0, chart).is_zero());
  CHECK(d_holo(zbar, 0, chart) == s * s);
  CHECK(d_holo(d_holo(zbar, 0, chart), 0, chart) ==
        ChartFunction::constant(1, HRational(2)) * z * s * s * s);

  CHECK(d_antiholo(zbar, 0, chart).is_zero());
  CHECK(d_antiholo(z, 0, chart) == s * s);
  CHECK(d_antiholo(z * zbar, 0, chart) == zbar * s * s);
}

TEST_CASE("composite operators: annihilation and commutativity") {
  const ChartMetric chart = cpn_chart_metric(2);
  std::mt19937 rng(6060);

  const ChartFunction f = random_polynomial(rng, 2, 3);
  CHECK(apply_multi(f, MultiIndex({0, 0}), DerivativeKind::kHolomorphic, chart) == f);
  CHECK(apply_multi(f, MultiIndex({-1, 1}), DerivativeKind::kHolomorphic, chart).is_zero());
  CHECK(apply_multi(f, MultiIndex({1, -2}), DerivativeKind::kAntiholomorphic, chart).is_zero());

  for (int trial = 0; trial < 8; ++trial) {
    const ChartFunction g = random_polynomial(rng, 2, 2);
    CHECK(d_holo(d_holo(g, 0, chart), 1, chart) == d_holo(d_holo(g, 1, chart), 0, chart));
    CHECK(d_antiholo(d_antiholo(g, 0, chart), 1, chart) ==
          d_antiholo(d_antiholo(g, 1, chart), 0, chart));
  }

  // Mixed second derivative of zbar1 zbar2, both application orders, and the
  // full Leibniz expansion of the two contractions.
  const ChartFunction zb1 = var(2, 0, true), zb2 = var(2, 1, true);
  const ChartFunction mixed = zb1 * zb2;
  const ChartFunction d12 = d_holo(d_holo(mixed, 1, chart), 0, chart);
  CHECK(d12 == apply_multi(mixed, MultiIndex({1, 1}), DerivativeKind::kHolomorphic, chart));
  CHECK_FALSE(d12.is_zero());
  const ChartFunction leibniz = d_holo(d_holo(zb1, 1, chart), 0, chart) * zb2 +
                                d_holo(zb1, 1, chart) * d_holo(zb2, 0, chart) +
                                d_holo(zb1, 0, chart) * d_holo(zb2, 1, chart) +
                                zb1 * d_holo(d_holo(zb2, 1, chart), 0, chart);
  CHECK(d12 == leibniz);
}

TEST_CASE("star product frozen example on the projective line") {
  const CoefficientTable table = cpn_closed_table(1, 1);
  const ChartMetric chart = cpn_chart_metric(1);
  const ChartFunction z = var(1, 0), zbar = var(1, 0, true);
  const ChartFunction s = ChartFunction::s_polynomial(1);

  const StarResult result = star(zbar, z, table, 1, chart);
  const ChartFunction expected = zbar * z + ChartFunction::constant(1, h) * s * s;
  CHECK(result.value == expected);
  CHECK(result.truncation_order == 1);
}

TEST_CASE("separation of variables is exact") {
  std::mt19937 rng(808);
  for (int dim = 1; dim <= 2; ++dim) {
    const CoefficientTable table = cpn_closed_table(dim, 2);
    const ChartMetric chart = cpn_chart_metric(dim);
    StarEvaluator ev(table, chart, 2);
    for (int trial = 0; trial < 10; ++trial) {
      const ChartFunction any = random_polynomial(rng, dim, 3);
      const ChartFunction holo = random_monomial(rng, dim, 4, false);
      const ChartFunction antiholo = random_monomial(rng, dim, 4, true);
      CHECK(ev.product(holo, any).value == holo * any);
      CHECK(ev.product(any, antiholo).value == any * antiholo);
    }
  }
}

TEST_CASE("unit law and its corruption probe") {
  const ChartMetric chart = cpn_chart_metric(1);
  const CoefficientTable table = cpn_closed_table(1, 3);
  const ChartFunction f = var(1, 0) * var(1, 0) * var(1, 0, true);  // z^2 zbar

  CHECK(check_unit(f, table, 3, chart).pass);
  CHECK(check_unit(ChartFunction::constant(1, HRational(1)), table, 3, chart).pass);

  CoefficientTable corrupted = table;
  corrupted.set(0, MultiIndex(1), MultiIndex(1), HRational(2));
  const UnitCheckReport report = check_unit(f, corrupted, 3, chart);
  CHECK_FALSE(report.pass);
  CHECK(report.first_bad_order == 0);
}

TEST_CASE("first-order antisymmetric part equals the bivector contraction") {
  const ChartMetric chart = cpn_chart_metric(1);
  const CoefficientTable table = cpn_closed_table(1, 1);
  const ChartFunction z = var(1, 0), zbar = var(1, 0, true);
  const ChartFunction s = ChartFunction::s_polynomial(1);

  const PoissonCheckReport zz = check_poisson(z, zbar, table, chart);
  CHECK(zz.pass);
  CHECK(zz.antisymmetric_part == -(s * s));  // sign fixed by T^1 = h g

  CHECK(check_poisson(z, z, table, chart).pass);
  CHECK(check_poisson(z, z, table, chart).antisymmetric_part.is_zero());

  const PoissonCheckReport holo_pair = check_poisson(z, z * z, table, chart);
  CHECK(holo_pair.pass);
  CHECK(holo_pair.antisymmetric_part.is_zero());

  // Degree <= 3 monomial pairs on the line and the plane.
  for (int dim = 1; dim <= 2; ++dim) {
    const CoefficientTable t = cpn_closed_table(dim, 1);
    const ChartMetric c = cpn_chart_metric(dim);
    std::mt19937 rng(900 + dim);
    for (int trial = 0; trial < 8; ++trial) {
      ChartFunction a = random_monomial(rng, dim, 2, false) * random_monomial(rng, dim, 1, true);
      ChartFunction b = random_monomial(rng, dim, 1, false) * random_monomial(rng, dim, 2, true);
      CHECK(check_poisson(a, b, t, c).pass);
    }
  }

  // A corrupted first-order entry breaks the identity.
  CoefficientTable corrupted = table;
  corrupted.set(1, MultiIndex({1}), MultiIndex({1}), HRational(2) * h);
  CHECK_FALSE(check_poisson(z, zbar, corrupted, chart).pass);
}

TEST_CASE("associativity of the truncated product") {
  const ChartMetric chart1 = cpn_chart_metric(1);
  const CoefficientTable table1 = cpn_closed_table(1, 4);
  const ChartFunction z = var(1, 0), zbar = var(1, 0, true);

  CHECK(check_associativity(zbar, z, zbar, table1, 3, chart1).pass);
  CHECK(check_associativity(zbar, ChartFunction::constant(1, HRational(5)), z * zbar, table1, 4,
                            chart1)
            .pass);

  const ChartMetric chart2 = cpn_chart_metric(2);
  const CoefficientTable table2 = cpn_closed_table(2, 2);
  CHECK(check_associativity(var(2, 0, true), var(2, 1) * var(2, 0, true), var(2, 1), table2, 2,
                            chart2)
            .pass);

  // Corrupting the second-order scalar surfaces as an order-2 defect. The
  // probe triple needs D(g) and Dbar^2(h) nonzero, or the induced coboundary
  // happens to vanish.
  CoefficientTable corrupted = table1;
  const MultiIndex two({2});
  corrupted.set(2, two, two, corrupted.lookup(2, two, two) + h * h);
  const AssociativityReport bad =
      check_associativity(zbar, z * zbar, z * z, corrupted, 3, chart1);
  CHECK_FALSE(bad.pass);
  CHECK(bad.first_bad_order == 2);
}

TEST_CASE("origin consistency with the coefficient table") {
  std::mt19937 rng(1112);
  for (int dim = 1; dim <= 2; ++dim) {
    const CoefficientTable table = cpn_closed_table(dim, 3);
    const ChartMetric chart = cpn_chart_metric(dim);
    StarEvaluator ev(table, chart, 3);
    const ChartFunction f = random_polynomial(rng, dim, 2);
    const ChartFunction g = random_polynomial(rng, dim, 2);

    HRational from_table;
    for (int n = 0; n <= 3; ++n)
      for (const MultiIndex& alpha : enumerate_weight(dim, n))
        for (const MultiIndex& beta : enumerate_weight(dim, n)) {
          const HRational& t = table.lookup(n, alpha, beta);
          if (t.is_zero()) continue;
          const HRational left =
              apply_multi(f, alpha, DerivativeKind::kHolomorphic, chart).value_at_origin();
          const HRational right =
              apply_multi(g, beta, DerivativeKind::kAntiholomorphic, chart).value_at_origin();
          from_table += t * left * right;
        }
    CHECK(ev.product(f, g).value.value_at_origin() == from_table);
  }
}

TEST_CASE("evaluator preconditions") {
  const CoefficientTable table = cpn_closed_table(1, 2);
  const ChartMetric chart = cpn_chart_metric(1);
  CHECK_THROWS_AS(StarEvaluator(table, chart, 3), std::invalid_argument);
  CHECK_THROWS_AS(StarEvaluator(table, cpn_chart_metric(2), 2), std::invalid_argument);

  const CoefficientTable g22 = solve_g22(1);
  CHECK_THROWS_AS(StarEvaluator(g22, chart, 1), std::invalid_argument);
}

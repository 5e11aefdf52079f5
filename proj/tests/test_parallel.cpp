#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starprod/coeff_engine.hpp"
#include "starprod/parser.hpp"
#include "starprod/star.hpp"

// Every OpenMP kernel has a serial reference twin; over exact arithmetic the
// two must produce bit-identical results, not merely close ones.

using namespace starprod;

TEST_CASE("general solver: serial and parallel agree") {
  for (const Manifold& m : {Manifold::cpn(2), Manifold::cpn(3), Manifold::grassmann(2, 2)}) {
    const CoefficientTable serial = solve_general(m, 3, ExecPolicy::kSerial);
    const CoefficientTable parallel = solve_general(m, 3, ExecPolicy::kParallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("closed-form table builder: serial and parallel agree") {
  for (int dim = 1; dim <= 3; ++dim)
    CHECK(cpn_closed_table(dim, 4, ExecPolicy::kSerial) ==
          cpn_closed_table(dim, 4, ExecPolicy::kParallel));
}

TEST_CASE("g22 recurrence: serial and parallel agree") {
  CHECK(solve_g22(3, ExecPolicy::kSerial) == solve_g22(3, ExecPolicy::kParallel));
}

TEST_CASE("residual verifier: serial and parallel agree") {
  const Manifold m = Manifold::cpn(2);
  CoefficientTable table = solve_general(m, 3);
  CHECK(verify_residual_all(table, m.geometry, ExecPolicy::kSerial).pass ==
        verify_residual_all(table, m.geometry, ExecPolicy::kParallel).pass);

  const MultiIndex idx({1, 1});
  table.set(2, idx, idx, table.lookup(2, idx, idx) + HRational(1));
  const ResidualReport serial = verify_residual(table, m.geometry, 2, ExecPolicy::kSerial);
  const ResidualReport parallel = verify_residual(table, m.geometry, 2, ExecPolicy::kParallel);
  CHECK_FALSE(serial.pass);
  CHECK_FALSE(parallel.pass);
  REQUIRE(serial.violations.size() == parallel.violations.size());
  for (std::size_t k = 0; k < serial.violations.size(); ++k) {
    CHECK(serial.violations[k].alpha == parallel.violations[k].alpha);
    CHECK(serial.violations[k].beta == parallel.violations[k].beta);
    CHECK(serial.violations[k].residual == parallel.violations[k].residual);
  }
}

TEST_CASE("star product: serial and parallel agree") {
  const int dim = 2;
  const CoefficientTable table = cpn_closed_table(dim, 2);
  const ChartMetric chart = cpn_chart_metric(dim);
  const ChartFunction f = lower(parse_expression("z1*zb2 + zb1", dim), dim);
  const ChartFunction g = lower(parse_expression("z2*zb1 - 2*z1", dim), dim);
  CHECK(star(f, g, table, 2, chart, ExecPolicy::kSerial).value ==
        star(f, g, table, 2, chart, ExecPolicy::kParallel).value);
}

// Timing comparison between the serial reference kernels and their OpenMP
// twins. Both paths compute identical exact results; the equality column is
// checked on every run.

#include <chrono>
#include <iomanip>
#include <iostream>

#include "starprod/coeff_engine.hpp"
#include "starprod/parser.hpp"
#include "starprod/star.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace starprod;

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

template <typename Fn>
auto timed(Fn&& fn, double& out_ms) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  out_ms = ms_since(start);
  return result;
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << serial_ms << " ms" << std::setw(10)
            << parallel_ms << " ms" << std::setw(9) << std::setprecision(2)
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "x   "
            << (equal ? "results equal" : "RESULT MISMATCH") << "\n";
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "built without OpenMP; both columns run the serial kernel\n";
#endif
  std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(13) << "serial"
            << std::setw(13) << "parallel" << std::setw(10) << "speedup" << "\n";

  double ts = 0, tp = 0;

  const Manifold cp3 = Manifold::cpn(3);
  const auto general_s = timed([&] { return solve_general(cp3, 4, ExecPolicy::kSerial); }, ts);
  const auto general_p = timed([&] { return solve_general(cp3, 4, ExecPolicy::kParallel); }, tp);
  row("solve_general cpn:3 order 4", ts, tp, general_s == general_p);

  const auto res_s =
      timed([&] { return verify_residual_all(general_s, cp3.geometry, ExecPolicy::kSerial); }, ts);
  const auto res_p = timed(
      [&] { return verify_residual_all(general_p, cp3.geometry, ExecPolicy::kParallel); }, tp);
  row("verify_residual cpn:3 order 4", ts, tp, res_s.pass == res_p.pass);

  const auto closed_s = timed([&] { return cpn_closed_table(3, 5, ExecPolicy::kSerial); }, ts);
  const auto closed_p = timed([&] { return cpn_closed_table(3, 5, ExecPolicy::kParallel); }, tp);
  row("cpn_closed_table cpn:3 order 5", ts, tp, closed_s == closed_p);

  const auto g22_s = timed([&] { return solve_g22(3, ExecPolicy::kSerial); }, ts);
  const auto g22_p = timed([&] { return solve_g22(3, ExecPolicy::kParallel); }, tp);
  row("solve_g22 order 3", ts, tp, g22_s == g22_p);

  const int dim = 2;
  const CoefficientTable table = cpn_closed_table(dim, 3);
  const ChartMetric chart = cpn_chart_metric(dim);
  const ChartFunction f = lower(parse_expression("z1*zb2 + zb1^2", dim), dim);
  const ChartFunction g = lower(parse_expression("z2*zb1", dim), dim);
  const auto star_s = timed([&] { return star(f, g, table, 3, chart, ExecPolicy::kSerial); }, ts);
  const auto star_p = timed([&] { return star(f, g, table, 3, chart, ExecPolicy::kParallel); }, tp);
  row("star product cpn:2 order 3", ts, tp, star_s.value == star_p.value);

  return 0;
}

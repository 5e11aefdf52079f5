#include "starprod/geometry.hpp"

namespace starprod {

namespace {

std::size_t flat4(int n, int p, int k, int l, int i) {
  return ((static_cast<std::size_t>(p) * n + k) * n + l) * n + i;
}

}  // namespace

GeometryPoint custom_geometry(HMatrix metric, std::vector<HRational> curvature, CurvatureForm form) {
  const int n = static_cast<int>(metric.size());
  if (n < 1) throw std::invalid_argument("empty metric");
  for (const auto& row : metric)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("metric not square");
  if (curvature.size() != static_cast<std::size_t>(n) * n * n * n)
    throw std::invalid_argument("curvature must have dim^4 entries");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (metric[i][j] != metric[j][i]) throw MetricSymmetryError();

  auto inverse = invert_exact(metric);
  if (!inverse) throw SingularMetricError();

  if (form == CurvatureForm::kLowered) {
    // Raise the two middle indices: R_pbar^{kbar lbar}_ibar
    //   = g^{a kbar} g^{b lbar} R_{pbar a b ibar}.
    std::vector<HRational> raised(curvature.size(), HRational());
    for (int p = 0; p < n; ++p)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i) {
            HRational acc;
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                acc += (*inverse)[k][a] * (*inverse)[l][b] * curvature[flat4(n, p, a, b, i)];
            raised[flat4(n, p, k, l, i)] = acc;
          }
    curvature = std::move(raised);
  }

  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (int i = 0; i < n; ++i)
          if (curvature[flat4(n, p, k, l, i)] != curvature[flat4(n, p, l, k, i)])
            throw CurvatureSymmetryError("curvature not symmetric in its raised indices");

  GeometryPoint g;
  g.dim_ = n;
  g.metric_ = std::move(metric);
  g.inverse_ = std::move(*inverse);
  g.curv_ = std::move(curvature);
  return g;
}

GeometryPoint grassmann_geometry(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("grassmann dimensions must be positive");
  const int n = p * q;
  // Composite index A = (a, a') flattened as a*q + a'. At the origin both
  // factor matrices are identities, so the metric is the identity and
  // R_Abar^{Cbar Dbar}_Bbar = -d_{(a,b'),C} d_{(b,a'),D} - d_{(b,a'),C} d_{(a,b'),D}.
  HMatrix metric = identity_matrix(n);
  std::vector<HRational> curv(static_cast<std::size_t>(n) * n * n * n, HRational());
  for (int A = 0; A < n; ++A) {
    const int a = A / q, a1 = A % q;
    for (int B = 0; B < n; ++B) {
      const int b = B / q, b1 = B % q;
      const int X = a * q + b1;  // (a, b')
      const int Y = b * q + a1;  // (b, a')
      for (int C = 0; C < n; ++C)
        for (int D = 0; D < n; ++D) {
          long value = 0;
          if (C == X && D == Y) value -= 1;
          if (C == Y && D == X) value -= 1;
          if (value != 0) curv[flat4(n, A, C, D, B)] = HRational(value);
        }
    }
  }
  return custom_geometry(std::move(metric), std::move(curv));
}

GeometryPoint cpn_geometry(int n) {
  if (n < 1) throw std::invalid_argument("projective dimension must be positive");
  HMatrix metric = identity_matrix(n);
  std::vector<HRational> curv(static_cast<std::size_t>(n) * n * n * n, HRational());
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) {
          long value = 0;
          if (p == k && i == l) value -= 1;
          if (i == k && p == l) value -= 1;
          if (value != 0) curv[flat4(n, p, k, l, i)] = HRational(value);
        }
  return custom_geometry(std::move(metric), std::move(curv));
}

GeometryPoint one_dim_geometry(const HRational& g11, const HRational& scalar_r) {
  HMatrix metric{{g11}};
  return custom_geometry(std::move(metric), {scalar_r});
}

}  // namespace starprod

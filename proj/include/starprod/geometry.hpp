#pragma once

#include <stdexcept>
#include <vector>

#include "starprod/linsolve.hpp"

namespace starprod {

struct SingularMetricError : std::runtime_error {
  SingularMetricError() : std::runtime_error("metric is singular") {}
};

struct CurvatureSymmetryError : std::runtime_error {
  explicit CurvatureSymmetryError(const std::string& what) : std::runtime_error(what) {}
};

struct MetricSymmetryError : std::runtime_error {
  MetricSymmetryError() : std::runtime_error("metric entries must satisfy g[i][j] = g[j][i]") {}
};

/// Whether user-supplied curvature comes with both upper indices already
/// raised, or all-lower (then it is contracted with two inverse metrics).
enum class CurvatureForm { kRaised, kLowered };

/// Pointwise data of a locally symmetric Kahler geometry at a fixed chart
/// point: metric g_{i jbar}, its exact inverse g^{ibar j}, and the raised
/// curvature components R_pbar^{kbar lbar}_ibar. Covariant constancy of the
/// star-product coefficients means this single point determines every table.
class GeometryPoint {
 public:
  GeometryPoint() = default;  // empty placeholder; real data comes from the factories

  int dim() const { return dim_; }

  /// g_{i jbar}: row = unbarred index, column = barred index.
  const HRational& metric(int i, int j) const { return metric_[i][j]; }
  /// g^{ibar j}: row = barred index, column = unbarred index.
  const HRational& inverse_metric(int i, int j) const { return inverse_[i][j]; }
  /// R_pbar^{kbar lbar}_ibar, symmetric in (k, l).
  const HRational& curvature(int p, int k, int l, int i) const {
    return curv_[((static_cast<std::size_t>(p) * dim_ + k) * dim_ + l) * dim_ + i];
  }

  const HMatrix& metric_matrix() const { return metric_; }
  const HMatrix& inverse_metric_matrix() const { return inverse_; }
  const std::vector<HRational>& curvature_flat() const { return curv_; }

  friend GeometryPoint custom_geometry(HMatrix metric, std::vector<HRational> curvature,
                                       CurvatureForm form);

 private:
  int dim_ = 0;
  HMatrix metric_, inverse_;
  std::vector<HRational> curv_;  // flat [p][k][l][i]
};

/// Fubini-Study data of CP^N at the chart origin: identity metric and
/// curvature R_pbar^{kbar lbar}_ibar = -d_{pk} d_{il} - d_{ik} d_{pl}.
GeometryPoint cpn_geometry(int n);

/// Grassmannian G_{p,q} at the chart origin. Composite coordinates (i, i')
/// are flattened lexicographically, so for p = q = 2 the order is
/// 11' < 12' < 21' < 22'.
GeometryPoint grassmann_geometry(int p, int q);

/// One-dimensional geometry from the single metric entry and the scalar
/// curvature component R = R_1bar^{1bar 1bar}_1bar.
GeometryPoint one_dim_geometry(const HRational& g11, const HRational& scalar_r);

/// Validates and completes user data: symmetric invertible metric, curvature
/// (flat [p][k][l][i], or all-lower [p][a][b][i] when form is kLowered)
/// symmetric under exchange of its two middle indices.
GeometryPoint custom_geometry(HMatrix metric, std::vector<HRational> curvature,
                              CurvatureForm form = CurvatureForm::kRaised);

}  // namespace starprod

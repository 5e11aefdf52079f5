#pragma once

#include <string>

#include "starprod/coeff_table.hpp"
#include "starprod/exec.hpp"
#include "starprod/linsolve.hpp"

namespace starprod {

/// Raised when a per-order linear system has no unique solution. An
/// inconsistent system signals geometry data that is not locally symmetric
/// (or a curvature-convention mismatch); rank deficiency is surfaced with
/// the free-variable count rather than resolved.
struct RecurrenceSolveError : std::runtime_error {
  RecurrenceSolveError(std::string what, int order, SolveStatus status, int free_variables)
      : std::runtime_error(std::move(what)),
        order(order),
        status(status),
        free_variables(free_variables) {}
  int order;
  SolveStatus status;
  int free_variables;
};

struct SingularSystemError : std::runtime_error {
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Builds T^n_{alpha,beta} order by order for any locally symmetric
/// geometry: each order assembles the full recurrence system (one equation
/// per coordinate i, alpha, and beta with beta_i >= 1, all shifted indices
/// annihilated when invalid) and solves it exactly over Q(h). The system is
/// overdetermined; redundant equations are eliminated and re-checked, never
/// least-squares fitted. Equations for distinct alpha never couple, so the
/// solve decomposes into independent alpha-blocks (the parallel kernel).
CoefficientTable solve_general(const Manifold& manifold, int max_order,
                               ExecPolicy policy = ExecPolicy::kParallel);
CoefficientTable solve_general(const GeometryPoint& geometry, int max_order,
                               ExecPolicy policy = ExecPolicy::kParallel);

/// One-dimensional closed form
///   T^n = (g_11)^n prod_{k=1..n} 2h / (2k + h k (k-1) R).
HRational coeff_1d(const HRational& g11, const HRational& scalar_r, int order);

/// All second-order coefficients of a two-dimensional geometry as the 3x3
/// matrix T2 = h^2 * M * C^{-1}, rows/columns indexed by (2,0),(1,1),(0,2).
HMatrix coeff_2d_order2(const GeometryPoint& geometry);

/// Projective-space recurrence
///   T^n = sum_d h g_{ibar d} / ((1 + h - h n) beta_i) T^{n-1}_{alpha-e_d, beta-e_i},
/// evaluated with any one coordinate i with beta_i >= 1 (the result does not
/// depend on the choice).
CoefficientTable cpn_recurrence(int dim, int max_order);

/// Projective-space closed form: the block permanent of G^{alpha,beta} times
/// the factorial weights 1/(alpha_k! beta_k!) and the scalar product
/// prod_{j=1..n} h / (1 + h - h j).
HRational cpn_closed(int dim, const MultiIndex& alpha, const MultiIndex& beta);
CoefficientTable cpn_closed_table(int dim, int max_order,
                                  ExecPolicy policy = ExecPolicy::kParallel);

/// Scalar h^n / (n! prod_{j=0..n-1} (1 - j h)): the finite telescoping of the
/// gamma-function ratio form of the projective-space product.
HRational cpn_gamma_coeff(int order);

/// Coefficient table for the four-dimensional Grassmannian G_{2,2} from its
/// dedicated coupled recurrence, coordinates ordered 11' < 12' < 21' < 22'.
CoefficientTable solve_g22(int max_order, ExecPolicy policy = ExecPolicy::kParallel);

struct ResidualViolation {
  int order;
  int coord;  // the equation's i
  MultiIndex alpha;
  MultiIndex beta;
  HRational residual;
};

struct ResidualReport {
  bool pass = true;
  std::vector<ResidualViolation> violations;
};

/// Evaluates every recurrence equation of one order against a populated
/// table; violations are report content, not errors.
ResidualReport verify_residual(const CoefficientTable& table, const GeometryPoint& geometry,
                               int order, ExecPolicy policy = ExecPolicy::kParallel);

/// Residual check for every order 1..table.max_order().
ResidualReport verify_residual_all(const CoefficientTable& table, const GeometryPoint& geometry,
                                   ExecPolicy policy = ExecPolicy::kParallel);

}  // namespace starprod

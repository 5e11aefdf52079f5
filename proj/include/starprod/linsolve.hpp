#pragma once

#include <optional>
#include <vector>

#include "starprod/hrational.hpp"

namespace starprod {

using HMatrix = std::vector<std::vector<HRational>>;

enum class SolveStatus { kUnique, kInconsistent, kRankDeficient };

struct SolveOutcome {
  SolveStatus status = SolveStatus::kUnique;
  std::vector<HRational> solution;  // populated only for kUnique
  int rank = 0;
  int free_variables = 0;
  int inconsistent_row = -1;  // first equation violated, for diagnostics
};

/// Exact Gaussian elimination over Q(h) for a (possibly overdetermined)
/// system a.x = rhs. Redundant rows must be consistent; any contradiction
/// or rank deficiency is reported rather than resolved.
SolveOutcome solve_exact(HMatrix a, std::vector<HRational> rhs);

/// Exact inverse of a square matrix over Q(h); nullopt when singular.
std::optional<HMatrix> invert_exact(const HMatrix& a);

HMatrix identity_matrix(int n);
HMatrix multiply(const HMatrix& a, const HMatrix& b);

}  // namespace starprod

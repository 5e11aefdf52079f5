#include "starprod/linsolve.hpp"

#include <stdexcept>

namespace starprod {

SolveOutcome solve_exact(HMatrix a, std::vector<HRational> rhs) {
  const int nrows = static_cast<int>(a.size());
  if (rhs.size() != a.size()) throw std::invalid_argument("rhs size mismatch");
  const int ncols = nrows == 0 ? 0 : static_cast<int>(a[0].size());

  SolveOutcome out;
  std::vector<int> pivot_col;  // pivot column of each eliminated row
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    // Exact pivoting: any nonzero entry works; prefer the structurally
    // smallest one to keep intermediate polynomials short.
    int best = -1;
    long best_size = 0;
    for (int r = row; r < nrows; ++r) {
      if (a[r][col].is_zero()) continue;
      long size = a[r][col].num().degree() + a[r][col].den().degree();
      if (best < 0 || size < best_size) {
        best = r;
        best_size = size;
      }
    }
    if (best < 0) continue;
    std::swap(a[best], a[row]);
    std::swap(rhs[best], rhs[row]);
    const HRational inv = a[row][col].inverse();
    for (int c = col; c < ncols; ++c) a[row][c] *= inv;
    rhs[row] *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      const HRational factor = a[r][col];
      for (int c = col; c < ncols; ++c) a[r][c] -= factor * a[row][c];
      rhs[r] -= factor * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }

  out.rank = row;
  out.free_variables = ncols - out.rank;
  for (int r = row; r < nrows; ++r) {
    if (!rhs[r].is_zero()) {
      out.status = SolveStatus::kInconsistent;
      out.inconsistent_row = r;
      return out;
    }
  }
  if (out.free_variables > 0) {
    out.status = SolveStatus::kRankDeficient;
    return out;
  }
  out.status = SolveStatus::kUnique;
  out.solution.assign(ncols, HRational());
  for (int r = 0; r < row; ++r) out.solution[pivot_col[r]] = rhs[r];
  return out;
}

std::optional<HMatrix> invert_exact(const HMatrix& a) {
  const int n = static_cast<int>(a.size());
  HMatrix work = a;
  HMatrix inv = identity_matrix(n);
  for (int col = 0; col < n; ++col) {
    if (static_cast<int>(work[col].size()) != n) throw std::invalid_argument("matrix not square");
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!work[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const HRational scale = work[col][col].inverse();
    for (int c = 0; c < n; ++c) {
      work[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || work[r][col].is_zero()) continue;
      const HRational factor = work[r][col];
      for (int c = 0; c < n; ++c) {
        work[r][c] -= factor * work[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

HMatrix identity_matrix(int n) {
  HMatrix m(n, std::vector<HRational>(n, HRational()));
  for (int i = 0; i < n; ++i) m[i][i] = HRational(1);
  return m;
}

HMatrix multiply(const HMatrix& a, const HMatrix& b) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int m = k == 0 ? 0 : static_cast<int>(b[0].size());
  HMatrix out(n, std::vector<HRational>(m, HRational()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
  return out;
}

}  // namespace starprod

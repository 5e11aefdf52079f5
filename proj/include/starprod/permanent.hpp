#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starprod/linsolve.hpp"
#include "starprod/multiindex.hpp"

namespace starprod {

/// Default cap on dense permanent size; the sum over S_n (or Ryser's
/// inclusion-exclusion) is only needed as an oracle, never in bulk.
inline constexpr int kPermanentSizeBound = 12;

/// Signless determinant |C|+ = sum over permutations of the diagonal-free
/// products, with every term weighted +1. Exact for any commutative ring
/// that supports +, -, * and scaling by HRational. A plain transcription of
/// the permutation sum is used up to 6x6; larger inputs switch to Ryser
/// inclusion-exclusion, still exact.
template <typename Ring>
Ring plus_det(const std::vector<std::vector<Ring>>& m, const Ring& one,
              int size_bound = kPermanentSizeBound) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return one;
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("plus_det requires a square matrix");
  if (n > size_bound) throw std::invalid_argument("plus_det size exceeds configured bound");

  const Ring zero = one - one;
  if (n <= 6) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Ring acc = zero;
    do {
      Ring term = one;
      for (int r = 0; r < n; ++r) term = term * m[r][perm[r]];
      acc = acc + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
  }

  // Ryser: |C|+ = (-1)^n sum_{S != empty} (-1)^{|S|} prod_r sum_{j in S} C[r][j].
  Ring acc = zero;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    Ring term = one;
    for (int r = 0; r < n; ++r) {
      Ring rowsum = zero;
      for (int j = 0; j < n; ++j)
        if (mask & (1ul << j)) rowsum = rowsum + m[r][j];
      term = term * rowsum;
    }
    const int bits = __builtin_popcountl(mask);
    if (((n - bits) % 2) == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

inline HRational plus_det(const HMatrix& m, int size_bound = kPermanentSizeBound) {
  return plus_det(m, HRational(1), size_bound);
}

/// Cofactor-style expansion of |C|+ along one row; every cofactor enters
/// with coefficient +1. Agrees with plus_det for every row choice.
template <typename Ring>
Ring plus_det_expand(const std::vector<std::vector<Ring>>& m, int row, const Ring& one) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return one;
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("plus_det_expand requires a square matrix");
  if (row < 0 || row >= n) throw std::invalid_argument("plus_det_expand row out of range");
  if (n == 1) return m[0][0];
  Ring acc = one - one;
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<Ring>> minor;
    minor.reserve(n - 1);
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      std::vector<Ring> mrow;
      mrow.reserve(n - 1);
      for (int c = 0; c < n; ++c)
        if (c != j) mrow.push_back(m[r][c]);
      minor.push_back(std::move(mrow));
    }
    acc = acc + m[row][j] * plus_det_expand(minor, 0, one);
  }
  return acc;
}

inline HRational plus_det_expand(const HMatrix& m, int row) {
  return plus_det_expand(m, row, HRational(1));
}

/// Dense block matrix G^{alpha,beta}: block (p, q) is constant with value
/// metric[p][q] and shape alpha_p x beta_q.
template <typename Ring>
std::vector<std::vector<Ring>> assemble_block_matrix(const MultiIndex& alpha,
                                                     const MultiIndex& beta,
                                                     const std::vector<std::vector<Ring>>& metric) {
  if (alpha.weight() != beta.weight())
    throw std::invalid_argument("block matrix requires |alpha| = |beta|");
  if (!alpha.valid() || !beta.valid())
    throw std::invalid_argument("block matrix requires valid multi-indices");
  std::vector<std::vector<Ring>> out;
  for (int p = 0; p < alpha.dim(); ++p)
    for (int r = 0; r < alpha[p]; ++r) {
      std::vector<Ring> row;
      for (int q = 0; q < beta.dim(); ++q)
        for (int c = 0; c < beta[q]; ++c) row.push_back(metric[p][q]);
      out.push_back(std::move(row));
    }
  return out;
}

/// |G^{alpha,beta}|+ through the block recursion
///   |G^{a,b}|+ = sum_J b_J * g[I][J] * |G^{a-e_I, b-e_J}|+
/// for any row block I with a_I >= 1, memoized on the index pair. The cache
/// is scoped to one evaluator, so the metric stays fixed for its lifetime.
template <typename Ring>
class BlockPermanentEvaluator {
 public:
  BlockPermanentEvaluator(std::vector<std::vector<Ring>> metric, Ring one)
      : metric_(std::move(metric)), one_(std::move(one)) {}

  Ring eval(const MultiIndex& alpha, const MultiIndex& beta) {
    if (alpha.weight() != beta.weight())
      throw std::invalid_argument("block permanent requires |alpha| = |beta|");
    if (!alpha.valid() || !beta.valid()) return one_ - one_;
    return eval_rec(alpha, beta);
  }

 private:
  Ring eval_rec(const MultiIndex& alpha, const MultiIndex& beta) {
    if (alpha.weight() == 0) return one_;
    const auto key = std::make_pair(alpha, beta);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int block = 0;
    while (alpha[block] == 0) ++block;
    Ring acc = one_ - one_;
    const MultiIndex alpha_next = alpha.minus(block);
    for (int j = 0; j < beta.dim(); ++j) {
      if (beta[j] == 0) continue;
      acc = acc + metric_[block][j] * eval_rec(alpha_next, beta.minus(j)) * HRational(beta[j]);
    }
    memo_.emplace(key, acc);
    return acc;
  }

  std::vector<std::vector<Ring>> metric_;
  Ring one_;
  std::map<std::pair<MultiIndex, MultiIndex>, Ring> memo_;
};

/// One-shot block permanent over Q(h).
inline HRational block_permanent(const MultiIndex& alpha, const MultiIndex& beta,
                                 const HMatrix& metric) {
  BlockPermanentEvaluator<HRational> ev(metric, HRational(1));
  return ev.eval(alpha, beta);
}

}  // namespace starprod

#pragma once

#include <compare>
#include <span>
#include <utility>
#include <vector>

#include "starprod/rational.hpp"

namespace starprod {

/// N-component integer multi-index. Components may go negative under index
/// shifts; such indices are "invalid" and annihilate whatever term carries
/// them, so they stay representable and only valid() distinguishes them.
class MultiIndex {
 public:
  explicit MultiIndex(int dim) : comps_(dim, 0) {}
  explicit MultiIndex(std::vector<int> comps) : comps_(std::move(comps)) {}
  MultiIndex(std::initializer_list<int> comps) : comps_(comps) {}

  /// Unit vector e_i (0-based coordinate).
  static MultiIndex unit(int dim, int coord);

  int dim() const { return static_cast<int>(comps_.size()); }
  int operator[](int i) const { return comps_[i]; }
  int& operator[](int i) { return comps_[i]; }
  const std::vector<int>& components() const { return comps_; }

  int weight() const;
  bool valid() const;

  /// Componentwise shift by (coordinate, +1/-1) deltas; 0-based coordinates.
  MultiIndex shifted(std::span<const std::pair<int, int>> deltas) const;
  MultiIndex shifted(std::initializer_list<std::pair<int, int>> deltas) const {
    return shifted(std::span<const std::pair<int, int>>(deltas.begin(), deltas.size()));
  }
  MultiIndex plus(int coord) const { return shifted({{coord, +1}}); }
  MultiIndex minus(int coord) const { return shifted({{coord, -1}}); }

  bool operator==(const MultiIndex& rhs) const { return comps_ == rhs.comps_; }
  auto operator<=>(const MultiIndex& rhs) const { return comps_ <=> rhs.comps_; }

  std::string str() const;

 private:
  std::vector<int> comps_;
};

/// All valid N-component multi-indices of weight n, in lexicographic order.
std::vector<MultiIndex> enumerate_weight(int dim, int weight);

/// Product of the componentwise factorials; requires a valid index.
Rational factorial_product(const MultiIndex& idx);

}  // namespace starprod

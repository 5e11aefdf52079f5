#include "starprod/multiindex.hpp"

#include <sstream>
#include <stdexcept>

namespace starprod {

MultiIndex MultiIndex::unit(int dim, int coord) {
  MultiIndex e(dim);
  e.comps_.at(coord) = 1;
  return e;
}

int MultiIndex::weight() const {
  int w = 0;
  for (int c : comps_) w += c;
  return w;
}

bool MultiIndex::valid() const {
  for (int c : comps_)
    if (c < 0) return false;
  return true;
}

MultiIndex MultiIndex::shifted(std::span<const std::pair<int, int>> deltas) const {
  MultiIndex out(*this);
  for (const auto& [coord, step] : deltas) out.comps_.at(coord) += step;
  return out;
}

std::string MultiIndex::str() const {
  std::ostringstream s;
  s << "(";
  for (int i = 0; i < dim(); ++i) s << (i ? "," : "") << comps_[i];
  s << ")";
  return s.str();
}

std::vector<MultiIndex> enumerate_weight(int dim, int weight) {
  if (dim < 1) throw std::invalid_argument("multi-index dimension must be positive");
  if (weight < 0) throw std::invalid_argument("multi-index weight must be non-negative");
  std::vector<MultiIndex> out;
  MultiIndex cur(dim);
  // Recursive lexicographic fill: position i takes 0..remaining.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == dim - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  fill(fill, 0, weight);
  return out;
}

Rational factorial_product(const MultiIndex& idx) {
  if (!idx.valid()) throw std::invalid_argument("factorial of invalid multi-index " + idx.str());
  Rational f(1);
  for (int i = 0; i < idx.dim(); ++i) f *= factorial(idx[i]);
  return f;
}

}  // namespace starprod

#include "starprod/coeff_table.hpp"

namespace starprod {

namespace {
const HRational kZero;
}

Manifold Manifold::cpn(int n) {
  Manifold m;
  m.kind = ManifoldKind::kCpn;
  m.cpn_dim = n;
  m.geometry = cpn_geometry(n);
  return m;
}

Manifold Manifold::grassmann(int p, int q) {
  Manifold m;
  m.kind = ManifoldKind::kGrassmann;
  m.grassmann_p = p;
  m.grassmann_q = q;
  m.geometry = grassmann_geometry(p, q);
  return m;
}

Manifold Manifold::one_dim(const HRational& g11, const HRational& r) {
  Manifold m;
  m.kind = ManifoldKind::kOneDim;
  m.onedim_g11 = g11;
  m.onedim_r = r;
  m.geometry = one_dim_geometry(g11, r);
  return m;
}

Manifold Manifold::custom(GeometryPoint geometry) {
  Manifold m;
  m.kind = ManifoldKind::kCustom;
  m.geometry = std::move(geometry);
  return m;
}

CoefficientTable::CoefficientTable(Manifold manifold, int max_order)
    : manifold_(std::move(manifold)), max_order_(max_order) {
  if (max_order < 0) throw std::invalid_argument("table order must be non-negative");
}

const HRational& CoefficientTable::lookup(int order, const MultiIndex& alpha,
                                          const MultiIndex& beta) const {
  if (!alpha.valid() || !beta.valid()) return kZero;
  auto it = entries_.find(Key{order, alpha, beta});
  return it == entries_.end() ? kZero : it->second;
}

void CoefficientTable::set(int order, const MultiIndex& alpha, const MultiIndex& beta,
                           HRational value) {
  if (order < 0 || order > max_order_) throw std::invalid_argument("order outside table range");
  if (!alpha.valid() || !beta.valid()) throw std::invalid_argument("invalid multi-index entry");
  if (alpha.weight() != order || beta.weight() != order)
    throw std::invalid_argument("entry weight must equal its order");
  if (alpha.dim() != dim() || beta.dim() != dim())
    throw std::invalid_argument("entry dimension mismatch");
  // Zero entries are never stored, so tables built by different methods
  // compare structurally equal and serialize identically.
  if (value.is_zero())
    entries_.erase(Key{order, alpha, beta});
  else
    entries_[Key{order, alpha, beta}] = std::move(value);
}

std::vector<CoefficientTable::Entry> CoefficientTable::sorted_entries() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [key, value] : entries_)
    out.push_back(Entry{std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
  return out;
}

}  // namespace starprod

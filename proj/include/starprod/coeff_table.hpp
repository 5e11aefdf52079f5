#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "starprod/geometry.hpp"
#include "starprod/multiindex.hpp"

namespace starprod {

enum class ManifoldKind { kCpn, kGrassmann, kOneDim, kCustom };

/// Geometry plus provenance: which built-in family (if any) produced it and
/// with which parameters. Tables carry this so exported files are
/// self-describing and verification can pick the right cross-check paths.
struct Manifold {
  ManifoldKind kind = ManifoldKind::kCustom;
  int cpn_dim = 0;
  int grassmann_p = 0;
  int grassmann_q = 0;
  HRational onedim_g11;
  HRational onedim_r;
  GeometryPoint geometry;

  static Manifold cpn(int n);
  static Manifold grassmann(int p, int q);
  static Manifold one_dim(const HRational& g11, const HRational& r);
  static Manifold custom(GeometryPoint geometry);
};

/// Sparse table of star-product coefficients T^n_{alpha,beta} through a
/// maximum order. Only valid index pairs with |alpha| = |beta| = n are
/// stored; looking up anything else returns exact zero, matching the
/// annihilation convention of the recurrences.
class CoefficientTable {
 public:
  CoefficientTable(Manifold manifold, int max_order);

  const Manifold& manifold() const { return manifold_; }
  const GeometryPoint& geometry() const { return manifold_.geometry; }
  int dim() const { return manifold_.geometry.dim(); }
  int max_order() const { return max_order_; }

  const HRational& lookup(int order, const MultiIndex& alpha, const MultiIndex& beta) const;
  void set(int order, const MultiIndex& alpha, const MultiIndex& beta, HRational value);

  struct Entry {
    int order;
    MultiIndex alpha;
    MultiIndex beta;
    HRational value;
  };
  /// Entries in (n, alpha, beta) lexicographic order.
  std::vector<Entry> sorted_entries() const;

  bool operator==(const CoefficientTable& rhs) const { return entries_ == rhs.entries_; }

 private:
  using Key = std::tuple<int, MultiIndex, MultiIndex>;
  Manifold manifold_;
  int max_order_;
  std::map<Key, HRational> entries_;
};

}  // namespace starprod

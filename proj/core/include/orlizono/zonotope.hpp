#pragma once

#include "orlizono/body.hpp"
#include "orlizono/multisets.hpp"
#include "orlizono/phi.hpp"

namespace orlizono {

/// Asymmetric Orlicz zonotope: the convex body whose support function at u
/// is the Orlicz norm of the positive parts <v_i, u>_+ (one term per copy of
/// each generator).
class OrliczZonotope {
 public:
  OrliczZonotope(VectorMultiset generators, OrliczFunction phi);

  int dimension() const noexcept { return generators_.dimension(); }
  const VectorMultiset& generators() const noexcept { return generators_; }
  const OrliczFunction& phi() const noexcept { return phi_; }

  /// Any u, not necessarily unit. Zero when every positive part vanishes.
  double support(const Vector& u) const;
  /// Boundary point attaining h(u) for unit u; throws ZeroSupport if h(u) = 0.
  Vector support_point(const Vector& u) const;
  /// Oracle view for the body engine. Directions with h(u) = 0 still get a
  /// point (the finite-difference gradient), as the sandwich needs one.
  SupportOracle oracle() const;

 private:
  VectorMultiset generators_;
  OrliczFunction phi_;
  Matrix rows_;  // expanded generators, one per row
};

struct L1Volume {
  double value = 0.0;
  bool estimated = false;  // true when subset enumeration was capped
};

/// Volume of the Minkowski sum of segments [0, v_i]: the sum of |det| over
/// all n-subsets of the expanded multiset. Beyond 200000 subsets falls back to
/// hit-or-miss sampling with an exact zonotope membership test and flags it.
L1Volume l1_volume_detailed(const VectorMultiset& m);
double l1_volume(const VectorMultiset& m);

/// m with -m added: the Orlicz zonotope of the result is the origin
/// symmetric one.
VectorMultiset symmetrize(const VectorMultiset& m);

/// Calls visit(indices) for every increasing k-subset of {0..count-1}.
template <class Visit>
void for_each_subset(int count, int k, Visit&& visit) {
  if (k > count || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    visit(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == count - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

constexpr double kMaxSubsets = 200000.0;

}  // namespace orlizono

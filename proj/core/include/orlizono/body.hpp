#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "orlizono/hull.hpp"
#include "orlizono/multisets.hpp"

namespace orlizono {

/// A convex body presented by its support function h (1-homogeneous,
/// sublinear) and, optionally, a map u -> boundary point attaining h(u).
struct SupportOracle {
  int dimension = 0;
  std::function<double(const Vector&)> support;
  std::function<Vector(const Vector&)> support_point;

  double operator()(const Vector& u) const { return support(u); }
};

/// Gradient of the homogeneous extension of h at u by central differences
/// (step 1e-6), shifted along u so that <p, u> = h(u) exactly. u must be a
/// unit vector.
Vector finite_difference_support_point(const std::function<double(const Vector&)>& h, const Vector& u);

/// Deterministic direction sets: equally spaced angles in 2D, Fibonacci
/// sphere points in 3D, preceded by the six axis directions once count >= 12.
std::vector<Vector> sphere_directions(int dimension, int count);

struct VolumeBounds {
  double lower = 0.0;
  double upper = 0.0;
  double mid = 0.0;
  double halfwidth = 0.0;
};

/// inner hull (vertex description) contained in an outer polytope
/// (halfspace description).
class PolytopeSandwich {
 public:
  PolytopeSandwich(std::vector<Vector> inner_points, std::vector<geometry::Halfspace> outer,
                   std::vector<Vector> directions = {});

  int dimension() const noexcept { return inner_.dimension; }
  const geometry::ConvexHull& inner() const noexcept { return inner_; }
  const geometry::ConvexHull& outer() const noexcept { return outer_; }
  const std::vector<geometry::Halfspace>& outer_halfspaces() const noexcept { return halfspaces_; }
  const std::vector<Vector>& directions() const noexcept { return directions_; }
  /// Mean width of the inner hull.
  double mean_width() const noexcept { return mean_width_; }
  /// min over inner vertices and outer halfspaces of (offset - <a, x>) / |a|;
  /// >= -1e-9 for a valid sandwich.
  double containment_slack() const;

 private:
  friend PolytopeSandwich polar(const PolytopeSandwich&, const Vector&);
  PolytopeSandwich(geometry::ConvexHull inner, std::vector<geometry::Halfspace> outer,
                   std::vector<Vector> outer_vertices);
  void finish();

  geometry::ConvexHull inner_;
  geometry::ConvexHull outer_;
  std::vector<geometry::Halfspace> halfspaces_;
  std::vector<Vector> directions_;
  double mean_width_ = 0.0;
};

/// Throws DegenerateBody if the outer polytope is unbounded or the support
/// points are rank deficient.
PolytopeSandwich build_sandwich(const SupportOracle& h, int budget);

VolumeBounds volume_bounds(const PolytopeSandwich& s);

/// Polar sandwich about `center` (the result lives in the translated frame
/// where the center is the origin). Throws CenterNotInterior unless the
/// center sits at least 1e-8 x mean width inside the inner hull.
PolytopeSandwich polar(const PolytopeSandwich& s, const Vector& center);

/// Centroid of the inner hull.
Vector centroid(const PolytopeSandwich& s);

struct SantaloResult {
  Vector point;
  VolumeBounds polar_volume;
  int evaluations = 0;
};

/// Minimizes the midpoint polar volume over interior centers by coordinate
/// descent with step halving, started at the inner centroid.
SantaloResult santalo_point(const PolytopeSandwich& s);
SantaloResult santalo_point(const SupportOracle& h, int budget);

struct Membership {
  bool inside = true;
  std::optional<Vector> certificate;
};

/// One-sided test: false (with the separating direction) when
/// <x, u> > h(u)(1 + 1e-9) for one of `budget` sampled directions.
Membership contains(const SupportOracle& h, const Vector& x, int budget);

/// Tabulates h on a direction set once, for repeated membership queries.
class MembershipTester {
 public:
  MembershipTester(const SupportOracle& h, int budget);

  bool contains(const Vector& x) const;
  /// max_k <x, u_k> - h(u_k): positive outside, <= 0 inside the outer polytope.
  double margin(const Vector& x) const;

 private:
  std::vector<Vector> directions_;
  std::vector<double> values_;
};

/// Hit-or-miss volume in the bounding box [-h(-e_i), h(e_i)].
double monte_carlo_volume(const SupportOracle& h, int budget, int samples, std::uint64_t seed);

/// max over outer vertices of the distance to the nearest inner vertex: an
/// upper bound on the Hausdorff distance between the two polytopes.
double sandwich_gap(const PolytopeSandwich& s);

/// max_k (<a_k, x> - b_k) / |a_k| over the outer halfspaces. Positive values
/// certify x is outside the body; values below -sandwich_gap(s) certify it is
/// inside, since the outer polytope shrunk by the gap lies in the inner one.
double outer_margin(const PolytopeSandwich& s, const Vector& x);

/// max_u |h_a(u) - h_b(u)| over `budget` directions.
double hausdorff_distance(const geometry::ConvexHull& a, const geometry::ConvexHull& b, int budget);

constexpr double kSupportPointStep = 1e-6;
constexpr double kCenterMargin = 1e-8;

}  // namespace orlizono

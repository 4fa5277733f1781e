#pragma once

#include <span>
#include <vector>

#include "orlizono/multisets.hpp"

namespace orlizono::geometry {

/// Closed halfspace {x : <normal, x> <= offset}.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

/// Convex hull of a point cloud in R^2 or R^3 with outward unit facet normals.
/// Facets are edges in 2D and triangles in 3D (coplanar triangles are not
/// merged).
struct ConvexHull {
  int dimension = 0;
  std::vector<Vector> vertices;
  std::vector<Halfspace> facets;
  double volume = 0.0;
  Vector centroid;

  /// max_j <x_j, u>
  double support(const Vector& u) const;
  /// min over facets of offset - <normal, x>; positive strictly inside.
  double interior_margin(const Vector& x) const;
};

/// Throws DegenerateBody when the points do not span the space.
ConvexHull convex_hull(std::span<const Vector> points, int dimension);

/// Vertices of the bounded polytope cut out by the halfspaces, found by
/// dualizing about `interior` and reading the facets of the dual hull.
/// Throws CenterNotInterior if `interior` is not strictly inside every
/// halfspace and DegenerateBody if the intersection is unbounded.
std::vector<Vector> halfspace_vertices(std::span<const Halfspace> halfspaces, const Vector& interior);

}  // namespace orlizono::geometry

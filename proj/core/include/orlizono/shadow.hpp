#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "orlizono/multisets.hpp"
#include "orlizono/phi.hpp"

namespace orlizono {

/// Orthogonalization shadow system of a multiset: the generators move as
/// w_i(t) = v_i + t * speeds[i] * direction for t in [-1/a, 1]. The pivot
/// (index 0 of `vectors`) scales to (1 + t a) v_1; every other generator
/// loses its component along v_1 at t = 1.
struct ShadowSystem {
  VectorMultiset base{1};
  int dimension = 0;
  std::vector<Vector> vectors;  // expanded generators, pivot first
  Vector direction;             // v_1 / |v_1|
  std::vector<double> speeds;
  double a = 0.0;

  double t_lo() const noexcept { return -1.0 / a; }
  double t_hi() const noexcept { return 1.0; }
  /// Generator positions at t, zero vectors included.
  std::vector<Vector> generators_at(double t) const;
};

/// Ratio of |det| sums: n-subsets of the non-pivot generators over
/// (n-1)-subsets completed by the pivot as first row.
/// Throws PivotRemovalNotSpanning or ZeroDenominator.
double speed_a(const VectorMultiset& m, int pivot);

ShadowSystem orthogonalize(const VectorMultiset& m, int pivot);

/// Lowest entry index whose removal keeps the rest spanning, or -1.
int default_pivot(const VectorMultiset& m);

/// Evaluates the system at t and drops the vanished pivot; t = 0 returns
/// the base multiset itself. Throws OutOfInterval.
VectorMultiset shadow_at(const ShadowSystem& s, double t);

/// `points` equispaced parameters on [-1/a, 1].
std::vector<double> t_grid(const ShadowSystem& s, int points);

struct GraphValues {
  double upper = 0.0;
  double lower = 0.0;
};

/// Top and bottom heights of a body over x in v-perp, from its support
/// function: upper = inf_w h(v + w) - <x, w>, lower = -inf_w h(-v - w) + <x, w>
/// with w ranging over v-perp. Minimized by Nelder-Mead, multi-started from
/// 0 and +-2x, inside |w| <= 1e3; throws XOutsideProjection when the
/// minimizer runs into that box.
GraphValues graph_functions(const std::function<double(const Vector&)>& h, const Vector& v, const Vector& x);

struct ProjectionReport {
  int samples = 0;
  double max_deviation = 0.0;
  bool ok = true;
};

/// h_t(x) for x in v-perp should not depend on t.
ProjectionReport check_projection_invariance(const ShadowSystem& s, const OrliczFunction& phi, int samples,
                                             std::uint64_t seed);

struct LipschitzReport {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0.0;  // max of LHS - RHS
  bool ok = true;
};

/// |h_{t1}(x) - h_{t2}(x)| <= || (beta_i <v, x>)_i ||_phi |t1 - t2| + 1e-9.
LipschitzReport check_lipschitz(const ShadowSystem& s, const OrliczFunction& phi, int samples, std::uint64_t seed);

enum class CurveMode { Direct, Reciprocal };

struct CurvePoint {
  double t = 0.0;
  double y = 0.0;
  double halfwidth = 0.0;
};

struct ConvexityReport {
  bool convex = true;
  std::vector<int> violations;  // indices of offending interior points
  std::vector<double> excess;   // per interior point: y_mid - chord - slack
  double max_excess = 0.0;
};

/// Three-point convexity on consecutive triples after mapping y -> 1/y in
/// reciprocal mode. Slack is the propagated halfwidth of the triple plus
/// `extra_slack`. Throws NonMonotoneGrid.
ConvexityReport curve_convexity(std::span<const CurvePoint> points, CurveMode mode, double extra_slack = 0.0);

struct GraphInequalityReport {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0.0;
  bool ok = true;
};

/// lower(ls + mt) <= l upper(s) + m lower(t) <= upper(ls + mt) on random
/// (s, t, l, x) tuples with x inside the projection.
GraphInequalityReport check_graph_inequalities(const ShadowSystem& s, const OrliczFunction& phi, int samples,
                                               std::uint64_t seed, double tolerance = 1e-6);

/// A point of the (t-independent) projection onto v-perp, strictly inside,
/// drawn from the seed.
Vector sample_projection_point(const ShadowSystem& s, const OrliczFunction& phi, std::uint64_t seed);

}  // namespace orlizono

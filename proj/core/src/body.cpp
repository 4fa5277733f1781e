#include "orlizono/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "orlizono/error.hpp"

namespace orlizono {

using geometry::ConvexHull;
using geometry::Halfspace;

Vector finite_difference_support_point(const std::function<double(const Vector&)>& h, const Vector& u) {
  const auto n = u.size();
  Vector grad(n);
  Vector probe = u;
  for (Eigen::Index i = 0; i < n; ++i) {
    probe[i] = u[i] + kSupportPointStep;
    const double up = h(probe);
    probe[i] = u[i] - kSupportPointStep;
    const double down = h(probe);
    probe[i] = u[i];
    grad[i] = (up - down) / (2.0 * kSupportPointStep);
  }
  grad += (h(u) - grad.dot(u)) * u;
  return grad;
}

std::vector<Vector> sphere_directions(int dimension, int count) {
  std::vector<Vector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (dimension == 2) {
    for (int k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / count;
      Vector u(2);
      u << std::cos(theta), std::sin(theta);
      dirs.push_back(u);
    }
  } else if (dimension == 3) {
    // The six axis directions come first so boxes are cut exactly.
    const int axes = count >= 12 ? 6 : 0;
    for (int k = 0; k < axes; ++k) dirs.push_back(Vector::Unit(3, k / 2) * (k % 2 == 0 ? 1.0 : -1.0));
    const int rest = count - axes;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < rest; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / rest;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vector u(3);
      u << r * std::cos(golden * k), r * std::sin(golden * k), z;
      dirs.push_back(u);
    }
  } else {
    throw Error(Errc::InvalidArgument, "direction sets exist for dimensions 2 and 3");
  }
  return dirs;
}

namespace {

double mean_width_of(const ConvexHull& hull) {
  const auto dirs = sphere_directions(hull.dimension, hull.dimension == 2 ? 64 : 128);
  double total = 0.0;
  for (const auto& u : dirs) total += hull.support(u) + hull.support(-u);
  return total / static_cast<double>(dirs.size());
}

std::vector<Vector> polar_inner_points(const std::vector<Halfspace>& outer, const Vector& center) {
  std::vector<Vector> pts;
  pts.reserve(outer.size());
  for (const auto& h : outer) pts.push_back(h.normal / (h.offset - h.normal.dot(center)));
  return pts;
}

/// Vertices of {y : <y, x - c> <= 1 for x in hull}; one per hull facet.
std::vector<Vector> polar_outer_vertices(const ConvexHull& hull, const Vector& center) {
  std::vector<Vector> pts;
  pts.reserve(hull.facets.size());
  for (const auto& f : hull.facets) pts.push_back(f.normal / (f.offset - f.normal.dot(center)));
  return pts;
}

}  // namespace

PolytopeSandwich::PolytopeSandwich(std::vector<Vector> inner_points, std::vector<Halfspace> outer,
                                   std::vector<Vector> directions)
    : halfspaces_(std::move(outer)), directions_(std::move(directions)) {
  if (inner_points.empty()) throw Error(Errc::DegenerateBody, "no inner points");
  inner_ = geometry::convex_hull(inner_points, static_cast<int>(inner_points.front().size()));
  const auto verts = geometry::halfspace_vertices(halfspaces_, inner_.centroid);
  outer_ = geometry::convex_hull(verts, inner_.dimension);
  finish();
}

PolytopeSandwich::PolytopeSandwich(ConvexHull inner, std::vector<Halfspace> outer, std::vector<Vector> outer_vertices)
    : inner_(std::move(inner)), halfspaces_(std::move(outer)) {
  outer_ = geometry::convex_hull(outer_vertices, inner_.dimension);
  finish();
}

void PolytopeSandwich::finish() { mean_width_ = mean_width_of(inner_); }

double PolytopeSandwich::containment_slack() const {
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) {
    const double len = h.normal.norm();
    for (const auto& x : inner_.vertices) slack = std::min(slack, (h.offset - h.normal.dot(x)) / len);
  }
  return slack;
}

PolytopeSandwich build_sandwich(const SupportOracle& h, int budget) {
  const int n = h.dimension;
  if (budget < n + 1) throw Error(Errc::InvalidArgument, "direction budget must exceed the dimension");
  auto dirs = sphere_directions(n, budget);
  std::vector<Vector> points;
  std::vector<Halfspace> outer;
  points.reserve(dirs.size());
  outer.reserve(dirs.size());
  for (const auto& u : dirs) {
    const double value = h(u);
    outer.push_back({u, value});
    points.push_back(h.support_point ? h.support_point(u) : finite_difference_support_point(h.support, u));
  }
  return PolytopeSandwich(std::move(points), std::move(outer), std::move(dirs));
}

VolumeBounds volume_bounds(const PolytopeSandwich& s) {
  VolumeBounds b;
  b.lower = s.inner().volume;
  b.upper = std::max(s.outer().volume, b.lower);
  b.mid = 0.5 * (b.lower + b.upper);
  b.halfwidth = 0.5 * (b.upper - b.lower);
  return b;
}

PolytopeSandwich polar(const PolytopeSandwich& s, const Vector& center) {
  if (!(s.inner().interior_margin(center) >= kCenterMargin * s.mean_width())) {
    throw Error(Errc::CenterNotInterior, "polar center must lie inside the inner hull");
  }
  auto inner_points = polar_inner_points(s.outer_halfspaces(), center);
  ConvexHull inner = geometry::convex_hull(inner_points, s.dimension());
  std::vector<Halfspace> outer;
  outer.reserve(s.inner().vertices.size());
  for (const auto& x : s.inner().vertices) outer.push_back({x - center, 1.0});
  return PolytopeSandwich(std::move(inner), std::move(outer), polar_outer_vertices(s.inner(), center));
}

Vector centroid(const PolytopeSandwich& s) { return s.inner().centroid; }

SantaloResult santalo_point(const PolytopeSandwich& s) {
  const int n = s.dimension();
  const double width = s.mean_width();
  const double margin = kCenterMargin * width;
  int evaluations = 0;
  auto objective = [&](const Vector& c) {
    if (!(s.inner().interior_margin(c) >= margin)) return std::numeric_limits<double>::infinity();
    ++evaluations;
    const double lower = geometry::convex_hull(polar_inner_points(s.outer_halfspaces(), c), n).volume;
    const double upper = geometry::convex_hull(polar_outer_vertices(s.inner(), c), n).volume;
    return 0.5 * (lower + upper);
  };

  Vector point = s.inner().centroid;
  double value = objective(point);
  if (!std::isfinite(value)) throw Error(Errc::DegenerateBody, "inner centroid is not interior");
  double step = 0.125 * width;
  double value_at_last_halving = value;
  constexpr int kMaxEvaluations = 20000;
  while (evaluations < kMaxEvaluations) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (double sign : {1.0, -1.0}) {
        Vector trial = point;
        trial[i] += sign * step;
        double f = objective(trial);
        if (!(f < value)) continue;
        // Keep walking while it pays.
        while (f < value) {
          point = trial;
          value = f;
          trial[i] += sign * step;
          f = objective(trial);
        }
        improved = true;
        break;
      }
    }
    if (improved) continue;
    const double change = std::abs(value_at_last_halving - value) / value;
    if (step < 1e-6 * width && change < 1e-8) break;
    value_at_last_halving = value;
    step *= 0.5;
  }

  SantaloResult result;
  result.point = point;
  result.polar_volume = volume_bounds(polar(s, point));
  result.evaluations = evaluations;
  return result;
}

double sandwich_gap(const PolytopeSandwich& s) {
  double gap = 0.0;
  for (const auto& w : s.outer().vertices) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& v : s.inner().vertices) nearest = std::min(nearest, (w - v).squaredNorm());
    gap = std::max(gap, nearest);
  }
  return std::sqrt(gap);
}

double outer_margin(const PolytopeSandwich& s, const Vector& x) {
  double margin = -std::numeric_limits<double>::infinity();
  for (const auto& h : s.outer_halfspaces()) margin = std::max(margin, (h.normal.dot(x) - h.offset) / h.normal.norm());
  return margin;
}

SantaloResult santalo_point(const SupportOracle& h, int budget) { return santalo_point(build_sandwich(h, budget)); }

namespace {

bool violates(double projection, double support, const Vector& x) {
  return projection > support * (1.0 + 1e-9) + 1e-12 * std::max(1.0, x.norm());
}

}  // namespace

Membership contains(const SupportOracle& h, const Vector& x, int budget) {
  for (const auto& u : sphere_directions(h.dimension, budget)) {
    if (violates(x.dot(u), h(u), x)) return {false, u};
  }
  return {true, std::nullopt};
}

MembershipTester::MembershipTester(const SupportOracle& h, int budget)
    : directions_(sphere_directions(h.dimension, budget)) {
  values_.reserve(directions_.size());
  for (const auto& u : directions_) values_.push_back(h(u));
}

bool MembershipTester::contains(const Vector& x) const {
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    if (violates(x.dot(directions_[k]), values_[k], x)) return false;
  }
  return true;
}

double MembershipTester::margin(const Vector& x) const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < directions_.size(); ++k) m = std::max(m, x.dot(directions_[k]) - values_[k]);
  return m;
}

double monte_carlo_volume(const SupportOracle& h, int budget, int samples, std::uint64_t seed) {
  const int n = h.dimension;
  Vector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(n, i);
    lo[i] = -h(-e);
    hi[i] = h(e);
  }
  const MembershipTester tester(h, budget);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int hits = 0;
  Vector x(n);
  for (int k = 0; k < samples; ++k) {
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    if (tester.contains(x)) ++hits;
  }
  return (hi - lo).prod() * hits / samples;
}

double hausdorff_distance(const ConvexHull& a, const ConvexHull& b, int budget) {
  double d = 0.0;
  for (const auto& u : sphere_directions(a.dimension, budget)) d = std::max(d, std::abs(a.support(u) - b.support(u)));
  return d;
}

}  // namespace orlizono

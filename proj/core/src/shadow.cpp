#include "orlizono/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "orlizono/error.hpp"
#include "orlizono/nelder_mead.hpp"
#include "orlizono/norm.hpp"
#include "orlizono/parallel.hpp"
#include "orlizono/zonotope.hpp"

namespace orlizono {

namespace {

constexpr double kPerpTolerance = 1e-10;
constexpr double kGraphBox = 1e3;

/// Pivot first, then the pivot's remaining copies, then every other entry.
std::vector<Vector> pivot_first(const VectorMultiset& m, int pivot) {
  if (pivot < 0 || static_cast<std::size_t>(pivot) >= m.size())
    throw Error(Errc::InvalidArgument, "pivot index " + std::to_string(pivot) + " out of range");
  std::vector<Vector> out;
  const auto& p = m[static_cast<std::size_t>(pivot)];
  for (int k = 0; k < p.multiplicity; ++k) out.push_back(p.vector);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (static_cast<int>(i) == pivot) continue;
    for (int k = 0; k < m[i].multiplicity; ++k) out.push_back(m[i].vector);
  }
  return out;
}

double abs_det(const std::vector<const Vector*>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a.row(i) = rows[static_cast<std::size_t>(i)]->transpose();
  return std::abs(a.determinant());
}

/// Orthonormal basis of v-perp as columns.
Matrix perp_basis(const Vector& v) {
  const auto n = v.size();
  Matrix q = Eigen::HouseholderQR<Matrix>(v).householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

std::vector<double> shadow_values(const ShadowSystem& s, const OrliczFunction& phi, double t,
                                  const std::vector<Vector>& xs) {
  const OrliczZonotope z(shadow_at(s, t), phi);
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(z.support(x));
  return out;
}

Vector gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = normal(rng);
  return x;
}

}  // namespace

std::vector<Vector> ShadowSystem::generators_at(double t) const {
  std::vector<Vector> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Vector w = vectors[i] + (t * speeds[i]) * direction;
    if (i == 0 && std::abs(1.0 + t * a) <= 1e-12) w.setZero();
    out.push_back(std::move(w));
  }
  return out;
}

double speed_a(const VectorMultiset& m, int pivot) {
  const int n = m.dimension();
  const auto vs = pivot_first(m, pivot);
  const std::vector<Vector> rest(vs.begin() + 1, vs.end());
  if (rank_of(rest, n) < n)
    throw Error(Errc::PivotRemovalNotSpanning, "removing the pivot leaves a non-spanning multiset");
  const int r = static_cast<int>(rest.size());
  double numerator = 0.0;
  for_each_subset(r, n, [&](const std::vector<int>& idx) {
    std::vector<const Vector*> rows;
    for (int i : idx) rows.push_back(&rest[static_cast<std::size_t>(i)]);
    numerator += abs_det(rows);
  });
  double denominator = 0.0;
  for_each_subset(r, n - 1, [&](const std::vector<int>& idx) {
    std::vector<const Vector*> rows{&vs[0]};
    for (int i : idx) rows.push_back(&rest[static_cast<std::size_t>(i)]);
    denominator += abs_det(rows);
  });
  if (!(denominator > 0.0)) throw Error(Errc::ZeroDenominator, "pivot determinant sum vanishes");
  return numerator / denominator;
}

ShadowSystem orthogonalize(const VectorMultiset& m, int pivot) {
  ShadowSystem s;
  s.base = m;
  s.dimension = m.dimension();
  s.a = speed_a(m, pivot);
  s.vectors = pivot_first(m, pivot);
  const Vector& v1 = s.vectors[0];
  const double len = v1.norm();
  s.direction = v1 / len;
  s.speeds.resize(s.vectors.size());
  s.speeds[0] = s.a * len;
  for (std::size_t i = 1; i < s.vectors.size(); ++i) s.speeds[i] = -s.direction.dot(s.vectors[i]);
  return s;
}

int default_pivot(const VectorMultiset& m) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto vs = pivot_first(m, static_cast<int>(k));
    if (rank_of(std::vector<Vector>(vs.begin() + 1, vs.end()), m.dimension()) == m.dimension())
      return static_cast<int>(k);
  }
  return -1;
}

VectorMultiset shadow_at(const ShadowSystem& s, double t) {
  if (!(t >= s.t_lo() && t <= s.t_hi()))
    throw Error(Errc::OutOfInterval, "t = " + std::to_string(t) + " outside [" + std::to_string(s.t_lo()) + ", 1]");
  if (t == 0.0) return s.base;
  return VectorMultiset::normalized(s.dimension, s.generators_at(t));
}

std::vector<double> t_grid(const ShadowSystem& s, int points) {
  if (points < 2) throw Error(Errc::InvalidArgument, "a t-grid needs at least 2 points");
  std::vector<double> ts(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    ts[static_cast<std::size_t>(i)] = s.t_lo() + (s.t_hi() - s.t_lo()) * i / (points - 1);
  ts.front() = s.t_lo();
  ts.back() = s.t_hi();
  return ts;
}

GraphValues graph_functions(const std::function<double(const Vector&)>& h, const Vector& v, const Vector& x) {
  if (x.size() != v.size()) throw Error(Errc::DimensionMismatch, "x and v differ in dimension");
  if (std::abs(x.dot(v)) > kPerpTolerance) throw Error(Errc::InvalidArgument, "x is not orthogonal to v");
  const Matrix basis = perp_basis(v);
  const Vector xc = basis.transpose() * x;

  auto minimize = [&](const std::function<double(const Vector&)>& f) {
    auto boxed = [&](const Vector& c) {
      return c.norm() > kGraphBox ? std::numeric_limits<double>::infinity() : f(c);
    };
    NelderMeadResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (double sign : {0.0, 2.0, -2.0}) {
      const auto r = nelder_mead(boxed, sign * xc);
      if (r.value < best.value) best = r;
    }
    if (best.point.norm() >= 0.999 * kGraphBox)
      throw Error(Errc::XOutsideProjection, "graph infimum escapes the search box; x is outside the projection");
    return best.value;
  };

  GraphValues g;
  g.upper = minimize([&](const Vector& c) {
    const Vector w = basis * c;
    return h(v + w) - x.dot(w);
  });
  g.lower = -minimize([&](const Vector& c) {
    const Vector w = basis * c;
    return h(-v - w) + x.dot(w);
  });
  return g;
}

ProjectionReport check_projection_invariance(const ShadowSystem& s, const OrliczFunction& phi, int samples,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tdist(s.t_lo(), s.t_hi());
  std::vector<Vector> xs;
  std::vector<std::pair<double, double>> ts;
  for (int k = 0; k < samples; ++k) {
    Vector x = gaussian_vector(s.dimension, rng);
    x -= x.dot(s.direction) * s.direction;
    xs.push_back(x.normalized());
    ts.emplace_back(tdist(rng), tdist(rng));
  }
  std::vector<double> deviation(xs.size());
  parallel_for(xs.size(), [&](std::size_t k) {
    const OrliczZonotope z1(shadow_at(s, ts[k].first), phi);
    const OrliczZonotope z2(shadow_at(s, ts[k].second), phi);
    deviation[k] = std::abs(z1.support(xs[k]) - z2.support(xs[k]));
  });
  ProjectionReport r;
  r.samples = samples;
  for (double d : deviation) r.max_deviation = std::max(r.max_deviation, d);
  r.ok = r.max_deviation <= 1e-9;
  return r;
}

LipschitzReport check_lipschitz(const ShadowSystem& s, const OrliczFunction& phi, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tdist(s.t_lo(), s.t_hi());
  std::vector<Vector> xs;
  std::vector<std::pair<double, double>> ts;
  for (int k = 0; k < samples; ++k) {
    xs.push_back(gaussian_vector(s.dimension, rng));
    ts.emplace_back(tdist(rng), tdist(rng));
  }
  std::vector<double> excess(xs.size());
  parallel_for(xs.size(), [&](std::size_t k) {
    const auto& x = xs[k];
    const auto [t1, t2] = ts[k];
    const double lhs = std::abs(shadow_values(s, phi, t1, {x})[0] - shadow_values(s, phi, t2, {x})[0]);
    const double vx = s.direction.dot(x);
    std::vector<double> beta(s.speeds.size());
    for (std::size_t i = 0; i < beta.size(); ++i) beta[i] = std::abs(s.speeds[i] * vx);
    const double rhs = orlicz_norm(beta, phi) * std::abs(t1 - t2) + 1e-9;
    excess[k] = lhs - rhs;
  });
  LipschitzReport r;
  r.samples = samples;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (double e : excess) {
    r.worst_excess = std::max(r.worst_excess, e);
    if (e > 0.0) ++r.violations;
  }
  if (excess.empty()) r.worst_excess = 0.0;
  r.ok = r.violations == 0;
  return r;
}

ConvexityReport curve_convexity(std::span<const CurvePoint> points, CurveMode mode, double extra_slack) {
  if (points.size() < 3) throw Error(Errc::InvalidArgument, "convexity needs at least 3 points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].t > points[i - 1].t)) throw Error(Errc::NonMonotoneGrid, "t values must strictly increase");
  std::vector<double> y(points.size()), hw(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (mode == CurveMode::Reciprocal) {
      if (!(p.y > 0.0)) throw Error(Errc::InvalidArgument, "reciprocal mode needs positive values");
      y[i] = 1.0 / p.y;
      hw[i] = p.halfwidth < p.y ? p.halfwidth / (p.y * (p.y - p.halfwidth)) : std::numeric_limits<double>::infinity();
    } else {
      y[i] = p.y;
      hw[i] = p.halfwidth;
    }
  }
  ConvexityReport r;
  r.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 2 < points.size(); ++i) {
    const double t0 = points[i].t, t1 = points[i + 1].t, t2 = points[i + 2].t;
    const double w = (t2 - t1) / (t2 - t0);
    const double chord = w * y[i] + (1.0 - w) * y[i + 2];
    const double slack = hw[i + 1] + w * hw[i] + (1.0 - w) * hw[i + 2] + extra_slack;
    const double e = y[i + 1] - chord - slack;
    r.excess.push_back(e);
    r.max_excess = std::max(r.max_excess, e);
    if (e > 0.0) r.violations.push_back(static_cast<int>(i + 1));
  }
  r.convex = r.violations.empty();
  return r;
}

Vector sample_projection_point(const ShadowSystem& s, const OrliczFunction& phi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const OrliczZonotope z(s.base, phi);
  Vector center = Vector::Zero(s.dimension);
  for (const auto& v : s.vectors) center += v;
  center /= static_cast<double>(s.vectors.size() + 1);
  for (;;) {
    const Vector u = gaussian_vector(s.dimension, rng).normalized();
    if (!(z.support(u) > 0.0)) continue;
    const Vector p = z.support_point(u);
    const Vector q = center + 0.9 * (p - center);
    return q - q.dot(s.direction) * s.direction;
  }
}

GraphInequalityReport check_graph_inequalities(const ShadowSystem& s, const OrliczFunction& phi, int samples,
                                               std::uint64_t seed, double tolerance) {
  struct Tuple {
    double s, t, lambda;
    Vector x;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tdist(s.t_lo(), s.t_hi());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Tuple> tuples;
  for (int k = 0; k < samples; ++k) {
    Tuple tp{tdist(rng), tdist(rng), unit(rng), Vector()};
    tp.x = sample_projection_point(s, phi, rng());
    tuples.push_back(std::move(tp));
  }
  std::vector<double> excess(tuples.size());
  parallel_for(tuples.size(), [&](std::size_t k) {
    const auto& tp = tuples[k];
    auto graph = [&](double t) {
      const OrliczZonotope z(shadow_at(s, t), phi);
      return graph_functions([&z](const Vector& u) { return z.support(u); }, s.direction, tp.x);
    };
    const double mid_t = tp.lambda * tp.s + (1.0 - tp.lambda) * tp.t;
    const auto gs = graph(tp.s), gt = graph(tp.t), gm = graph(std::clamp(mid_t, s.t_lo(), s.t_hi()));
    const double middle = tp.lambda * gs.upper + (1.0 - tp.lambda) * gt.lower;
    excess[k] = std::max(gm.lower - middle, middle - gm.upper) - tolerance;
  });
  GraphInequalityReport r;
  r.samples = samples;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (double e : excess) {
    r.worst_excess = std::max(r.worst_excess, e);
    if (e > 0.0) ++r.violations;
  }
  if (excess.empty()) r.worst_excess = 0.0;
  r.ok = r.violations == 0;
  return r;
}

}  // namespace orlizono

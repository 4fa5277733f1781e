#include "orlizono/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "orlizono/error.hpp"

namespace orlizono::geometry {
namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double coordinate_scale(std::span<const Vector> points) {
  double s = 0.0;
  for (const auto& p : points) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return std::max(s, std::numeric_limits<double>::min());
}

ConvexHull hull2(std::span<const Vector> points) {
  if (points.size() < 3) throw Error(Errc::DegenerateBody, "planar hull needs three points");
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p[0], p[1]);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const double scale = coordinate_scale(points);
  const double tol = 1e-13 * scale * scale;

  std::vector<Eigen::Vector2d> chain(2 * pts.size() + 1);
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(chain[k - 2], chain[k - 1], p) <= tol) --k;
    chain[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(chain[k - 2], chain[k - 1], pts[i]) <= tol) --k;
    chain[k++] = pts[i];
  }
  if (k > 0) --k;  // last point repeats the first
  if (k < 3) throw Error(Errc::DegenerateBody, "planar hull is lower dimensional");
  chain.resize(k);

  ConvexHull hull;
  hull.dimension = 2;
  double area2 = 0.0;
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = chain[i];
    const auto& b = chain[(i + 1) % k];
    const double cr = a.x() * b.y() - b.x() * a.y();
    area2 += cr;
    c += cr * (a + b);
    Eigen::Vector2d edge = b - a;
    Vector normal(2);
    normal << edge.y(), -edge.x();
    normal.normalize();
    hull.facets.push_back({normal, normal[0] * a.x() + normal[1] * a.y()});
    hull.vertices.push_back(Vector(a));
  }
  if (!(area2 > 1e-14 * scale * scale)) throw Error(Errc::DegenerateBody, "planar hull has zero area");
  hull.volume = 0.5 * area2;
  hull.centroid = Vector(c / (3.0 * area2));
  return hull;
}

struct Face {
  std::array<int, 3> v;
  Eigen::Vector3d normal;
  double offset;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Support points computed by finite differences scatter around polytope
// vertices at about 1e-10 relative; such clusters produce triangles with
// meaningless normals, so they are collapsed first.
constexpr double kMergeTolerance = 1e-8;

std::vector<Eigen::Vector3d> merge_clusters(const std::vector<Eigen::Vector3d>& pts, double tol) {
  std::unordered_map<std::uint64_t, std::vector<int>> cells;
  std::vector<Eigen::Vector3d> kept;
  auto cell = [tol](double x) { return static_cast<std::int64_t>(std::floor(x / tol)); };
  auto key = [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return (static_cast<std::uint64_t>(a) * 73856093ULL) ^ (static_cast<std::uint64_t>(b) * 19349663ULL) ^
           (static_cast<std::uint64_t>(c) * 83492791ULL);
  };
  for (const auto& p : pts) {
    const std::int64_t cx = cell(p.x()), cy = cell(p.y()), cz = cell(p.z());
    bool duplicate = false;
    for (std::int64_t dx = -1; dx <= 1 && !duplicate; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && !duplicate; ++dy)
        for (std::int64_t dz = -1; dz <= 1 && !duplicate; ++dz) {
          const auto it = cells.find(key(cx + dx, cy + dy, cz + dz));
          if (it == cells.end()) continue;
          for (int k : it->second)
            if ((kept[static_cast<std::size_t>(k)] - p).lpNorm<Eigen::Infinity>() <= tol) duplicate = true;
        }
    if (duplicate) continue;
    cells[key(cx, cy, cz)].push_back(static_cast<int>(kept.size()));
    kept.push_back(p);
  }
  return kept;
}

ConvexHull hull3(std::span<const Vector> points) {
  const double scale = coordinate_scale(points);
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p[0], p[1], p[2]);
  pts = merge_clusters(pts, kMergeTolerance * scale);
  const int count = static_cast<int>(pts.size());
  const double eps = 1e-10 * scale;
  if (count < 4) throw Error(Errc::DegenerateBody, "spatial hull needs four points");

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  int i1 = 0;
  double best = -1.0;
  for (int i = 0; i < count; ++i) {
    const double d = (pts[i] - pts[i0]).squaredNorm();
    if (d > best) best = d, i1 = i;
  }
  int i2 = -1;
  best = -1.0;
  const Eigen::Vector3d axis = (pts[i1] - pts[i0]).normalized();
  for (int i = 0; i < count; ++i) {
    const double d = (pts[i] - pts[i0]).cross(axis).norm();
    if (d > best) best = d, i2 = i;
  }
  if (best <= 1e-9 * scale) throw Error(Errc::DegenerateBody, "points are collinear");
  const Eigen::Vector3d plane_n = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = -1;
  best = -1.0;
  for (int i = 0; i < count; ++i) {
    const double d = std::abs(plane_n.dot(pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= 1e-9 * scale) throw Error(Errc::DegenerateBody, "points are coplanar");

  const Eigen::Vector3d inside = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
  auto make_face = [&](int a, int b, int c) {
    Eigen::Vector3d n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    const double len = n.norm();
    n /= len;
    Face f{{a, b, c}, n, n.dot(pts[a])};
    if (f.normal.dot(inside) > f.offset) {
      f.v = {a, c, b};
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    return f;
  };

  // Quickhull: every face owns the outside points it sees; the farthest of
  // them is inserted next, which keeps new triangles well shaped. Faces live
  // in a slot vector and edge_face maps each directed edge to its owner so
  // the visible region can be grown by adjacency.
  std::vector<Face> faces;
  std::vector<char> alive;
  std::vector<std::vector<int>> outside;
  std::unordered_map<std::uint64_t, int> edge_face;
  std::vector<int> pending;
  auto distance = [&](int face, int point) {
    const Face& f = faces[static_cast<std::size_t>(face)];
    return f.normal.dot(pts[static_cast<std::size_t>(point)]) - f.offset;
  };
  auto add_face = [&](const Face& f) {
    const int id = static_cast<int>(faces.size());
    faces.push_back(f);
    alive.push_back(1);
    outside.emplace_back();
    for (int e = 0; e < 3; ++e) edge_face[edge_key(f.v[e], f.v[(e + 1) % 3])] = id;
    return id;
  };
  auto assign = [&](const std::vector<int>& candidates, const std::vector<int>& targets) {
    for (int q : candidates) {
      int best_face = -1;
      double best = eps;
      for (int k : targets) {
        const double d = distance(k, q);
        if (d > best) best = d, best_face = k;
      }
      if (best_face >= 0) outside[static_cast<std::size_t>(best_face)].push_back(q);
    }
    for (int k : targets)
      if (!outside[static_cast<std::size_t>(k)].empty()) pending.push_back(k);
  };

  std::vector<int> initial;
  for (const auto& f : {make_face(i0, i1, i2), make_face(i0, i1, i3), make_face(i0, i2, i3), make_face(i1, i2, i3)})
    initial.push_back(add_face(f));
  {
    std::vector<int> rest;
    for (int p = 0; p < count; ++p)
      if (p != i0 && p != i1 && p != i2 && p != i3) rest.push_back(p);
    assign(rest, initial);
  }

  std::vector<int> visible, stack, orphans, created;
  std::vector<char> mark;
  std::vector<std::pair<int, int>> horizon;
  while (!pending.empty()) {
    const int seed = pending.back();
    pending.pop_back();
    if (!alive[static_cast<std::size_t>(seed)] || outside[static_cast<std::size_t>(seed)].empty()) continue;
    const auto& candidates = outside[static_cast<std::size_t>(seed)];
    const int p = *std::max_element(candidates.begin(), candidates.end(),
                                    [&](int a, int b) { return distance(seed, a) < distance(seed, b); });

    mark.assign(faces.size(), 0);
    visible.clear();
    stack.assign(1, seed);
    mark[static_cast<std::size_t>(seed)] = 1;
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      visible.push_back(k);
      const Face& f = faces[static_cast<std::size_t>(k)];
      for (int e = 0; e < 3; ++e) {
        const auto it = edge_face.find(edge_key(f.v[(e + 1) % 3], f.v[e]));
        if (it == edge_face.end()) continue;
        const int nb = it->second;
        if (mark[static_cast<std::size_t>(nb)]) continue;
        if (distance(nb, p) > eps) {
          mark[static_cast<std::size_t>(nb)] = 1;
          stack.push_back(nb);
        }
      }
    }
    horizon.clear();
    orphans.clear();
    for (int k : visible) {
      const Face& f = faces[static_cast<std::size_t>(k)];
      for (int e = 0; e < 3; ++e) {
        const int a = f.v[e];
        const int b = f.v[(e + 1) % 3];
        const auto it = edge_face.find(edge_key(b, a));
        if (it == edge_face.end() || !mark[static_cast<std::size_t>(it->second)]) horizon.emplace_back(a, b);
      }
      for (int q : outside[static_cast<std::size_t>(k)])
        if (q != p) orphans.push_back(q);
      outside[static_cast<std::size_t>(k)].clear();
    }
    for (int k : visible) {
      alive[static_cast<std::size_t>(k)] = 0;
      const Face& f = faces[static_cast<std::size_t>(k)];
      for (int e = 0; e < 3; ++e) {
        const auto it = edge_face.find(edge_key(f.v[e], f.v[(e + 1) % 3]));
        if (it != edge_face.end() && it->second == k) edge_face.erase(it);
      }
    }
    created.clear();
    for (const auto& [a, b] : horizon) {
      Eigen::Vector3d n = (pts[static_cast<std::size_t>(b)] - pts[static_cast<std::size_t>(a)])
                              .cross(pts[static_cast<std::size_t>(p)] - pts[static_cast<std::size_t>(a)]);
      n.normalize();
      created.push_back(add_face(Face{{a, b, p}, n, n.dot(pts[static_cast<std::size_t>(a)])}));
    }
    assign(orphans, created);
  }
  {
    std::vector<Face> kept;
    for (std::size_t k = 0; k < faces.size(); ++k)
      if (alive[k]) kept.push_back(faces[k]);
    faces.swap(kept);
  }

  ConvexHull hull;
  hull.dimension = 3;
  std::vector<char> used(static_cast<std::size_t>(count), 0);
  double volume = 0.0;
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
  for (const auto& f : faces) {
    for (int v : f.v) used[static_cast<std::size_t>(v)] = 1;
    const Eigen::Vector3d& a = pts[f.v[0]];
    const Eigen::Vector3d& b = pts[f.v[1]];
    const Eigen::Vector3d& c = pts[f.v[2]];
    const double vol = (a - inside).dot((b - inside).cross(c - inside)) / 6.0;
    volume += vol;
    moment += vol * (inside + a + b + c) / 4.0;
    hull.facets.push_back({Vector(f.normal), f.offset});
  }
  for (int i = 0; i < count; ++i) {
    if (used[static_cast<std::size_t>(i)]) hull.vertices.push_back(Vector(pts[i]));
  }
  if (!(volume > 1e-14 * scale * scale * scale)) throw Error(Errc::DegenerateBody, "spatial hull has zero volume");
  hull.volume = volume;
  hull.centroid = Vector(moment / volume);
  return hull;
}

}  // namespace

double ConvexHull::support(const Vector& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::max(best, v.dot(u));
  return best;
}

double ConvexHull::interior_margin(const Vector& x) const {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& f : facets) margin = std::min(margin, f.offset - f.normal.dot(x));
  return margin;
}

ConvexHull convex_hull(std::span<const Vector> points, int dimension) {
  for (const auto& p : points) {
    if (p.size() != dimension) throw Error(Errc::DimensionMismatch, "hull point has wrong dimension");
  }
  if (dimension == 2) return hull2(points);
  if (dimension == 3) return hull3(points);
  throw Error(Errc::InvalidArgument, "convex hulls are supported in dimensions 2 and 3");
}

std::vector<Vector> halfspace_vertices(std::span<const Halfspace> halfspaces, const Vector& interior) {
  const int n = static_cast<int>(interior.size());
  double scale = 0.0;
  for (const auto& h : halfspaces) scale = std::max(scale, std::abs(h.offset - h.normal.dot(interior)) / h.normal.norm());
  std::vector<Vector> dual;
  dual.reserve(halfspaces.size());
  for (const auto& h : halfspaces) {
    const double slack = h.offset - h.normal.dot(interior);
    if (!(slack > 1e-14 * scale * h.normal.norm())) {
      throw Error(Errc::CenterNotInterior, "point is not strictly inside every halfspace");
    }
    dual.push_back(h.normal / slack);
  }
  const ConvexHull dual_hull = convex_hull(dual, n);
  double dual_scale = 0.0;
  for (const auto& d : dual_hull.vertices) dual_scale = std::max(dual_scale, d.norm());
  std::vector<Vector> vertices;
  vertices.reserve(dual_hull.facets.size());
  for (const auto& f : dual_hull.facets) {
    if (!(f.offset > 1e-12 * dual_scale)) throw Error(Errc::DegenerateBody, "halfspace intersection is unbounded");
    vertices.push_back(interior + f.normal / f.offset);
  }
  return vertices;
}

}  // namespace orlizono::geometry

#include "orlizono/zonotope.hpp"

#include <cmath>
#include <random>

#include "orlizono/error.hpp"
#include "orlizono/norm.hpp"

namespace orlizono {

OrliczZonotope::OrliczZonotope(VectorMultiset generators, OrliczFunction phi)
    : generators_(std::move(generators)), phi_(std::move(phi)) {
  const auto vs = generators_.expanded();
  rows_.resize(static_cast<Eigen::Index>(vs.size()), generators_.dimension());
  for (std::size_t i = 0; i < vs.size(); ++i) rows_.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
}

double OrliczZonotope::support(const Vector& u) const {
  if (u.size() != dimension()) throw Error(Errc::DimensionMismatch, "direction has wrong dimension");
  Eigen::VectorXd f = (rows_ * u).cwiseMax(0.0);
  return orlicz_norm(std::span<const double>(f.data(), static_cast<std::size_t>(f.size())), phi_);
}

Vector OrliczZonotope::support_point(const Vector& u) const {
  if (!(support(u) > 0.0)) throw Error(Errc::ZeroSupport, "support vanishes in this direction");
  return finite_difference_support_point([this](const Vector& w) { return support(w); }, u);
}

SupportOracle OrliczZonotope::oracle() const {
  SupportOracle o;
  o.dimension = dimension();
  o.support = [self = *this](const Vector& u) { return self.support(u); };
  o.support_point = [self = *this](const Vector& u) {
    return finite_difference_support_point([&self](const Vector& w) { return self.support(w); }, u);
  };
  return o;
}

namespace {

double binomial(int m, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

/// Unit normal of the hyperplane spanned by n-1 vectors, or nothing.
std::optional<Vector> hyperplane_normal(const std::vector<Vector>& vs, const std::vector<int>& idx, int n) {
  Matrix rows(n - 1, n);
  for (int r = 0; r < n - 1; ++r) rows.row(r) = vs[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].transpose();
  Eigen::FullPivLU<Matrix> lu(rows);
  lu.setThreshold(1e-10);
  if (lu.rank() != n - 1) return std::nullopt;
  Vector normal = lu.kernel().col(0);
  return normal.normalized();
}

L1Volume sampled_l1_volume(const std::vector<Vector>& vs, int n) {
  std::vector<Vector> normals;
  for_each_subset(static_cast<int>(vs.size()), n - 1, [&](const std::vector<int>& idx) {
    if (auto nu = hyperplane_normal(vs, idx, n)) {
      normals.push_back(*nu);
      normals.push_back(-*nu);
    }
  });
  auto h = [&](const Vector& u) {
    double s = 0.0;
    for (const auto& v : vs) s += std::max(0.0, v.dot(u));
    return s;
  };
  std::vector<double> offsets;
  for (const auto& nu : normals) offsets.push_back(h(nu));
  Vector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = -h(-Vector::Unit(n, i));
    hi[i] = h(Vector::Unit(n, i));
  }
  constexpr int kSamples = 100000;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int hits = 0;
  Vector x(n);
  for (int k = 0; k < kSamples; ++k) {
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    bool inside = true;
    for (std::size_t j = 0; j < normals.size() && inside; ++j) inside = normals[j].dot(x) <= offsets[j];
    hits += inside;
  }
  return {(hi - lo).prod() * hits / kSamples, true};
}

}  // namespace

L1Volume l1_volume_detailed(const VectorMultiset& m) {
  const int n = m.dimension();
  const auto vs = m.expanded();
  const int count = static_cast<int>(vs.size());
  if (count < n || !is_spanning(m)) return {0.0, false};
  if (binomial(count, n) > kMaxSubsets) return sampled_l1_volume(vs, n);
  double total = 0.0;
  Matrix rows(n, n);
  for_each_subset(count, n, [&](const std::vector<int>& idx) {
    for (int r = 0; r < n; ++r) rows.row(r) = vs[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].transpose();
    total += std::abs(rows.determinant());
  });
  return {total, false};
}

double l1_volume(const VectorMultiset& m) { return l1_volume_detailed(m).value; }

VectorMultiset symmetrize(const VectorMultiset& m) {
  VectorMultiset out = m;
  for (const auto& e : m.entries()) out.add(-e.vector, e.multiplicity);
  return out;
}

}  // namespace orlizono

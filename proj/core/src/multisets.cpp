#include "orlizono/multisets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "orlizono/error.hpp"

namespace orlizono {
namespace {

constexpr double kEqualTol = 1e-12;
constexpr double kParallelTol = 1e-10;
constexpr double kObtuseTol = 1e-10;

void check_dimension(const Vector& v, int dimension) {
  if (v.size() != dimension) {
    throw Error(Errc::DimensionMismatch,
                "vector of size " + std::to_string(v.size()) + " in dimension " + std::to_string(dimension));
  }
}

double cosine(const Vector& a, const Vector& b) { return a.dot(b) / (a.norm() * b.norm()); }

}  // namespace

bool same_vector(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  const double scale = std::max({1.0, a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()});
  return (a - b).lpNorm<Eigen::Infinity>() <= kEqualTol * scale;
}

VectorMultiset::VectorMultiset(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
}

VectorMultiset::VectorMultiset(int dimension, const std::vector<Vector>& vectors, const std::vector<int>& multiplicities)
    : VectorMultiset(dimension) {
  if (!multiplicities.empty() && multiplicities.size() != vectors.size()) {
    throw Error(Errc::InvalidArgument, "multiplicities must match vectors");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) add(vectors[i], multiplicities.empty() ? 1 : multiplicities[i]);
}

VectorMultiset VectorMultiset::normalized(int dimension, const std::vector<Vector>& vectors) {
  VectorMultiset m(dimension);
  for (const auto& v : vectors) {
    check_dimension(v, dimension);
    if (v.lpNorm<Eigen::Infinity>() > 0.0) m.add(v);
  }
  return m;
}

VectorMultiset VectorMultiset::canonical_basis(int dimension) {
  VectorMultiset m(dimension);
  for (int i = 0; i < dimension; ++i) m.add(Vector::Unit(dimension, i));
  return m;
}

int VectorMultiset::cardinality() const noexcept {
  int total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

std::vector<Vector> VectorMultiset::expanded() const {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(cardinality()));
  for (const auto& e : entries_) {
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.vector);
  }
  return out;
}

int VectorMultiset::find(const Vector& v) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (same_vector(entries_[i].vector, v)) return static_cast<int>(i);
  }
  return -1;
}

int VectorMultiset::multiplicity(const Vector& v) const {
  const int i = find(v);
  return i < 0 ? 0 : entries_[static_cast<std::size_t>(i)].multiplicity;
}

void VectorMultiset::add(const Vector& v, int multiplicity) {
  check_dimension(v, dimension_);
  if (multiplicity < 1) throw Error(Errc::InvalidArgument, "multiplicities must be positive integers");
  if (!v.allFinite()) throw Error(Errc::InvalidArgument, "vector entries must be finite");
  if (v.lpNorm<Eigen::Infinity>() == 0.0) throw Error(Errc::ZeroVector, "multisets hold nonzero vectors only");
  const int i = find(v);
  if (i >= 0) entries_[static_cast<std::size_t>(i)].multiplicity += multiplicity;
  else entries_.push_back({v, multiplicity});
}

bool operator==(const VectorMultiset& a, const VectorMultiset& b) {
  if (a.dimension_ != b.dimension_ || a.entries_.size() != b.entries_.size()) return false;
  for (const auto& e : a.entries_) {
    if (b.multiplicity(e.vector) != e.multiplicity) return false;
  }
  return true;
}

VectorMultiset combine(const VectorMultiset& a, const VectorMultiset& b, MultisetOp op) {
  if (a.dimension() != b.dimension()) throw Error(Errc::DimensionMismatch, "combine needs equal dimensions");
  VectorMultiset out(a.dimension());
  if (op == MultisetOp::Union) {
    for (const auto& e : a.entries()) out.add(e.vector, e.multiplicity);
    for (const auto& e : b.entries()) out.add(e.vector, e.multiplicity);
    return out;
  }
  for (const auto& e : a.entries()) {
    const int left = e.multiplicity - b.multiplicity(e.vector);
    if (left > 0) out.add(e.vector, left);
  }
  return out;
}

int rank_of(const std::vector<Vector>& vectors, int dimension) {
  if (vectors.empty()) return 0;
  Matrix rows(static_cast<Eigen::Index>(vectors.size()), dimension);
  for (std::size_t i = 0; i < vectors.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  Eigen::FullPivLU<Matrix> lu(rows);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

bool is_spanning(const VectorMultiset& m) {
  std::vector<Vector> vs;
  for (const auto& e : m.entries()) vs.push_back(e.vector);
  return rank_of(vs, m.dimension()) == m.dimension();
}

VectorMultiset gl_apply(const Matrix& transform, const VectorMultiset& m) {
  if (transform.rows() != m.dimension() || transform.cols() != m.dimension()) {
    throw Error(Errc::DimensionMismatch, "transform size does not match multiset dimension");
  }
  if (!(std::abs(transform.determinant()) > 1e-10)) throw Error(Errc::SingularMatrix, "|det M| <= 1e-10");
  VectorMultiset out(m.dimension());
  for (const auto& e : m.entries()) out.add(transform * e.vector, e.multiplicity);
  return out;
}

VectorMultiset merge_parallel(const VectorMultiset& m) {
  std::vector<Vector> directions;
  std::vector<Vector> sums;
  for (const auto& e : m.entries()) {
    std::size_t cls = 0;
    while (cls < directions.size() && cosine(directions[cls], e.vector) < 1.0 - kParallelTol) ++cls;
    if (cls == directions.size()) {
      directions.push_back(e.vector);
      sums.push_back(Vector::Zero(m.dimension()));
    }
    sums[cls] += e.multiplicity * e.vector;
  }
  return VectorMultiset(m.dimension(), sums);
}

bool is_obtuse(const VectorMultiset& m) {
  const auto& es = m.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].multiplicity != 1) return false;
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (es[i].vector.dot(es[j].vector) > kObtuseTol) return false;
    }
  }
  return true;
}

namespace {

ObtuseStructure structure_in_basis(const VectorMultiset& m, const std::vector<int>& basis_indices) {
  const int n = m.dimension();
  const auto& es = m.entries();
  if (static_cast<int>(basis_indices.size()) != n) throw Error(Errc::NotABasis, "basis needs exactly n entries");
  Matrix basis(n, n);
  std::vector<bool> in_basis(es.size(), false);
  for (int c = 0; c < n; ++c) {
    const int idx = basis_indices[static_cast<std::size_t>(c)];
    if (idx < 0 || idx >= static_cast<int>(es.size()) || in_basis[static_cast<std::size_t>(idx)]) {
      throw Error(Errc::NotABasis, "basis index out of range or repeated");
    }
    in_basis[static_cast<std::size_t>(idx)] = true;
    basis.col(c) = es[static_cast<std::size_t>(idx)].vector;
  }
  Eigen::FullPivLU<Matrix> lu(basis);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw Error(Errc::NotABasis, "selected entries are linearly dependent");

  ObtuseStructure out;
  out.basis = basis_indices;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (in_basis[i]) continue;
    out.remainder.push_back(static_cast<int>(i));
    Vector c = lu.solve(es[i].vector);
    const double scale = std::max(1.0, c.lpNorm<Eigen::Infinity>());
    std::vector<int> support;
    std::vector<double> mu;
    for (int k = 0; k < n; ++k) {
      if (c[k] > kObtuseTol * scale) out.nonpositive = false;
      if (std::abs(c[k]) > kObtuseTol * scale) {
        support.push_back(k);
        mu.push_back(-c[k]);
      } else {
        c[k] = 0.0;
      }
    }
    out.coordinates.push_back(c);
    out.partition.push_back(std::move(support));
    out.mu.push_back(std::move(mu));
  }
  for (std::size_t a = 0; a < out.coordinates.size(); ++a) {
    for (std::size_t b = a + 1; b < out.coordinates.size(); ++b) {
      const double scale = out.coordinates[a].norm() * out.coordinates[b].norm();
      if (std::abs(out.coordinates[a].dot(out.coordinates[b])) > kObtuseTol * scale) out.pairwise_orthogonal = false;
    }
  }
  return out;
}

}  // namespace

ObtuseStructure obtuse_structure(const VectorMultiset& m, const std::vector<int>& basis_indices) {
  if (!is_obtuse(m)) throw Error(Errc::NotObtuse, "obtuse_structure needs an obtuse set");
  return structure_in_basis(m, basis_indices);
}

bool is_gl_image_of_obtuse(const VectorMultiset& m) {
  if (!is_spanning(m)) return false;
  for (const auto& e : m.entries()) {
    if (e.multiplicity != 1) return false;
  }
  std::vector<int> basis;
  std::vector<Vector> chosen;
  for (std::size_t i = 0; i < m.size() && static_cast<int>(basis.size()) < m.dimension(); ++i) {
    chosen.push_back(m[i].vector);
    if (rank_of(chosen, m.dimension()) == static_cast<int>(chosen.size())) basis.push_back(static_cast<int>(i));
    else chosen.pop_back();
  }
  const auto s = structure_in_basis(m, basis);
  return s.nonpositive && s.pairwise_orthogonal;
}

bool is_gl_image_of_canonical_basis(const VectorMultiset& m) {
  return static_cast<int>(m.size()) == m.dimension() && m.cardinality() == m.dimension() && is_spanning(m);
}

int count_lines(const VectorMultiset& m) {
  std::vector<Vector> lines;
  for (const auto& e : m.entries()) {
    const bool seen = std::any_of(lines.begin(), lines.end(), [&](const Vector& l) {
      return std::abs(cosine(l, e.vector)) >= 1.0 - kParallelTol;
    });
    if (!seen) lines.push_back(e.vector);
  }
  return static_cast<int>(lines.size());
}

VectorMultiset random_multiset(int dimension, int count, std::uint64_t seed) {
  if (count < dimension) throw Error(Errc::InvalidArgument, "random_multiset needs count >= dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::lognormal_distribution<double> length(0.0, 0.5);
  for (;;) {
    std::vector<Vector> vs;
    for (int i = 0; i < count; ++i) {
      Vector d(dimension);
      for (int k = 0; k < dimension; ++k) d[k] = gauss(rng);
      if (d.norm() == 0.0) {
        --i;
        continue;
      }
      vs.push_back(d.normalized() * length(rng));
    }
    VectorMultiset m(dimension, vs);
    if (is_spanning(m)) return m;
  }
}

}  // namespace orlizono

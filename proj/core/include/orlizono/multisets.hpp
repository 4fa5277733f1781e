#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace orlizono {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct MultisetEntry {
  Vector vector;
  int multiplicity = 1;
};

/// Finite multiset of nonzero vectors, stored through its multiplicity
/// function: equal vectors (to 1e-12 relative) always collapse into a single
/// entry, so {v, v} and {v with multiplicity 2} are the same value.
class VectorMultiset {
 public:
  explicit VectorMultiset(int dimension);
  VectorMultiset(int dimension, const std::vector<Vector>& vectors, const std::vector<int>& multiplicities = {});

  /// Like the constructor, but silently discards zero vectors (shadow endpoints).
  static VectorMultiset normalized(int dimension, const std::vector<Vector>& vectors);
  static VectorMultiset canonical_basis(int dimension);

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  int cardinality() const noexcept;
  const std::vector<MultisetEntry>& entries() const noexcept { return entries_; }
  const MultisetEntry& operator[](std::size_t i) const { return entries_[i]; }

  /// Vectors repeated per multiplicity, in entry order.
  std::vector<Vector> expanded() const;
  int multiplicity(const Vector& v) const;

  void add(const Vector& v, int multiplicity = 1);

  friend bool operator==(const VectorMultiset& a, const VectorMultiset& b);

 private:
  int find(const Vector& v) const;

  int dimension_;
  std::vector<MultisetEntry> entries_;
};

bool same_vector(const Vector& a, const Vector& b);

enum class MultisetOp { Union, Difference };

/// Union adds multiplicity functions; difference takes max(0, 1_a - 1_b).
VectorMultiset combine(const VectorMultiset& a, const VectorMultiset& b, MultisetOp op);

/// Numerical rank by full-pivot elimination, pivot threshold 1e-10 x largest entry.
int rank_of(const std::vector<Vector>& vectors, int dimension);
bool is_spanning(const VectorMultiset& m);

/// Throws SingularMatrix when |det M| <= 1e-10.
VectorMultiset gl_apply(const Matrix& transform, const VectorMultiset& m);

/// Replaces each class of positively proportional vectors by its sum.
VectorMultiset merge_parallel(const VectorMultiset& m);

/// Every pair of distinct entries has <u, v> <= 1e-10 and all multiplicities are 1.
bool is_obtuse(const VectorMultiset& m);

struct ObtuseStructure {
  std::vector<int> basis;      // entry indices forming the basis
  std::vector<int> remainder;  // entry indices of everything else
  std::vector<Vector> coordinates;  // remainder vectors in basis coordinates
  bool pairwise_orthogonal = true;
  bool nonpositive = true;
  /// For each remainder vector j: the index set I_j and the coefficients mu_i
  /// with v_j = sum_{i in I_j} -mu_i b_i.
  std::vector<std::vector<int>> partition;
  std::vector<std::vector<double>> mu;
};

/// Expresses the non-basis vectors in the chosen basis. Requires an obtuse,
/// spanning m (NotObtuse) and n independent basis entries (NotABasis).
ObtuseStructure obtuse_structure(const VectorMultiset& m, const std::vector<int>& basis_indices);

/// True iff some linear image of m is obtuse. With any basis B drawn from m
/// mapped to the canonical basis, the rest must have nonpositive coordinates
/// with disjoint supports.
bool is_gl_image_of_obtuse(const VectorMultiset& m);

/// n distinct entries of multiplicity one that span.
bool is_gl_image_of_canonical_basis(const VectorMultiset& m);

/// Number of distinct lines through the origin spanned by the entries;
/// Z_1^+ m is a parallelepiped iff m spans and this equals the dimension.
int count_lines(const VectorMultiset& m);

/// m vectors with uniform directions and log-normal(0, 0.5) lengths, redrawn
/// until spanning. Deterministic in seed.
VectorMultiset random_multiset(int dimension, int count, std::uint64_t seed);

}  // namespace orlizono

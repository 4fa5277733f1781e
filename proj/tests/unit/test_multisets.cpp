#include <algorithm>

#include <doctest.h>

#include "orlizono/error.hpp"
#include "orlizono/multisets.hpp"
#include "property.hpp"

using namespace orlizono;
using prop::unit;
using prop::vec;

namespace {

VectorMultiset ms(std::vector<Vector> vs, std::vector<int> mult = {}) {
  int n = static_cast<int>(vs.front().size());
  return VectorMultiset(n, vs, mult);
}

/// Random obtuse spanning set in R^n containing the canonical basis: each
/// extra vector is -(mu_i e_i) over a block of a random partition.
VectorMultiset random_obtuse(std::mt19937_64& rng, int n) {
  std::vector<Vector> vs;
  for (int i = 0; i < n; ++i) vs.push_back(unit(n, i));
  std::vector<int> block(static_cast<std::size_t>(n));
  int blocks = prop::integer(rng, 0, n);
  for (auto& b : block) b = prop::integer(rng, 0, n);
  for (int k = 0; k < blocks; ++k) {
    Vector v = Vector::Zero(n);
    for (int i = 0; i < n; ++i)
      if (block[static_cast<std::size_t>(i)] == k) v[i] = -prop::uniform(rng, 0.2, 2.0);
    if (v.norm() > 0) vs.push_back(v);
  }
  return ms(vs);
}

}  // namespace

TEST_SUITE("multisets") {

TEST_CASE("equal vectors collapse into multiplicity") {
  auto a = ms({unit(2, 0), unit(2, 0), unit(2, 1)});
  CHECK(a.size() == 2);
  CHECK(a.cardinality() == 3);
  CHECK(a.multiplicity(unit(2, 0)) == 2);
  CHECK(a == ms({unit(2, 0), unit(2, 1)}, {2, 1}));
  CHECK(a.expanded().size() == 3);
  CHECK_THROWS_AS(ms({Vector::Zero(2)}), Error);
}

TEST_CASE("combine") {
  auto e1 = ms({unit(2, 0)});
  auto e2 = ms({unit(2, 1)});
  CHECK(combine(e1, e1, MultisetOp::Union) == ms({unit(2, 0)}, {2}));
  CHECK(combine(ms({unit(2, 0), unit(2, 1)}), e2, MultisetOp::Difference) == e1);
  CHECK(combine(e1, e2, MultisetOp::Difference) == e1);
  try {
    combine(e1, ms({unit(3, 0)}), MultisetOp::Union);
    FAIL("dimension mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("is_spanning") {
  CHECK(is_spanning(VectorMultiset::canonical_basis(2)));
  CHECK_FALSE(is_spanning(ms({unit(2, 0), vec({2, 0})})));
  CHECK(is_spanning(ms({unit(2, 0), vec({1, 1})})));
  CHECK(rank_of({vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 0, 1})}, 3) == 2);
}

TEST_CASE("gl_apply") {
  auto base = ms({unit(2, 0), unit(2, 1)});
  CHECK(gl_apply(Matrix::Identity(2, 2), base) == base);
  Matrix d = Matrix::Identity(2, 2);
  d(0, 0) = 2.0;
  CHECK(gl_apply(d, base) == ms({vec({2, 0}), unit(2, 1)}));
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK(gl_apply(rot, ms({unit(2, 0)})) == ms({unit(2, 1)}));
  Matrix singular(2, 2);
  singular << 1, 2, 2, 4;
  try {
    gl_apply(singular, base);
    FAIL("singular accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularMatrix);
  }
}

TEST_CASE("property: gl_apply round trip") {
  prop::for_all(31, 100, [](auto& rng) {
    int n = prop::integer(rng, 2, 3);
    auto m = random_multiset(n, prop::integer(rng, n, n + 4), rng());
    Matrix M = prop::matrix(rng, n);
    auto back = gl_apply(M, gl_apply(M.inverse(), m));
    REQUIRE(back.size() == m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK((back[i].vector - m[i].vector).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(back[i].multiplicity == m[i].multiplicity);
    }
  });
}

TEST_CASE("merge_parallel") {
  CHECK(merge_parallel(ms({unit(2, 0), vec({2, 0}), unit(2, 1)})) == ms({vec({3, 0}), unit(2, 1)}));
  auto opposite = ms({unit(2, 0), vec({-1, 0})});
  CHECK(merge_parallel(opposite) == opposite);
  CHECK(merge_parallel(VectorMultiset::canonical_basis(3)) == VectorMultiset::canonical_basis(3));
  CHECK(merge_parallel(ms({unit(2, 0)}, {3})) == ms({vec({3, 0})}));
}

TEST_CASE("property: merge_parallel is idempotent and keeps the vector sum") {
  prop::for_all(32, 100, [](auto& rng) {
    int n = prop::integer(rng, 2, 3);
    auto m = random_multiset(n, 4, rng());
    m.add(m[0].vector * prop::uniform(rng, 0.5, 2.0));
    m.add(m[1].vector, 2);
    auto once = merge_parallel(m);
    auto twice = merge_parallel(once);
    CHECK(once == twice);
    CHECK(once.size() <= m.size() - 1);
    Vector s1 = Vector::Zero(n), s2 = Vector::Zero(n);
    for (const auto& v : m.expanded()) s1 += v;
    for (const auto& v : once.expanded()) s2 += v;
    CHECK((s1 - s2).norm() <= 1e-12 * s1.norm() + 1e-12);
  });
}

TEST_CASE("is_obtuse") {
  CHECK(is_obtuse(VectorMultiset::canonical_basis(2)));
  CHECK_FALSE(is_obtuse(ms({unit(2, 0), vec({1, 1})})));
  CHECK(is_obtuse(ms({unit(2, 0), unit(2, 1), vec({-1, 0})})));
  CHECK_FALSE(is_obtuse(ms({unit(2, 0), unit(2, 1)}, {2, 1})));
}

TEST_CASE("obtuse_structure") {
  auto s = obtuse_structure(ms({unit(2, 0), unit(2, 1), vec({-1, 0})}), {0, 1});
  REQUIRE(s.remainder.size() == 1);
  CHECK(s.pairwise_orthogonal);
  CHECK(s.nonpositive);
  CHECK(s.coordinates[0].isApprox(vec({-1, 0})));
  REQUIRE(s.partition.size() == 1);
  CHECK(s.partition[0] == std::vector<int>{0});
  CHECK(s.mu[0][0] == doctest::Approx(1.0));

  auto empty = obtuse_structure(VectorMultiset::canonical_basis(2), {0, 1});
  CHECK(empty.remainder.empty());
  CHECK(empty.pairwise_orthogonal);
  CHECK(empty.nonpositive);

  auto cross = obtuse_structure(ms({unit(2, 0), unit(2, 1), vec({-1, 0}), vec({0, -1})}), {0, 1});
  CHECK(cross.remainder.size() == 2);
  CHECK(cross.pairwise_orthogonal);
  CHECK(cross.nonpositive);

  try {
    obtuse_structure(ms({unit(2, 0), vec({1, 1})}), {0, 1});
    FAIL("non-obtuse accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotObtuse);
  }
  try {
    obtuse_structure(ms({unit(2, 0), unit(2, 1), vec({-1, 0})}), {0, 2});
    FAIL("dependent basis accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotABasis);
  }
}

TEST_CASE("property: spanning obtuse sets have between n and 2n vectors") {
  prop::for_all(33, 200, [](auto& rng) {
    int n = prop::integer(rng, 2, 4);
    auto m = random_obtuse(rng, n);
    REQUIRE(is_obtuse(m));
    REQUIRE(is_spanning(m));
    CHECK(m.cardinality() >= n);
    CHECK(m.cardinality() <= 2 * n);
  });
  // A third vector in the plane cannot be obtuse to three pairwise obtuse ones.
  CHECK_FALSE(is_obtuse(ms({unit(2, 0), unit(2, 1), vec({-1, 0}), vec({0, -1}), vec({-1, -1})})));
}

TEST_CASE("property: mapping a basis of an obtuse set to the canonical basis keeps it obtuse") {
  prop::for_all(34, 200, [](auto& rng) {
    int n = prop::integer(rng, 2, 4);
    auto m = random_obtuse(rng, n);
    std::vector<Vector> vs = m.expanded();
    std::shuffle(vs.begin(), vs.end(), rng);
    std::vector<Vector> basis;
    for (const auto& v : vs) {
      auto trial = basis;
      trial.push_back(v);
      if (rank_of(trial, n) == static_cast<int>(trial.size())) basis = trial;
    }
    REQUIRE(static_cast<int>(basis.size()) == n);
    Matrix B(n, n);
    for (int i = 0; i < n; ++i) B.col(i) = basis[static_cast<std::size_t>(i)];
    auto image = gl_apply(B.inverse(), m);
    for (int i = 0; i < n; ++i) CHECK(image.multiplicity(unit(n, i)) == 1);
    CHECK(is_obtuse(image));
    CHECK(is_gl_image_of_obtuse(gl_apply(prop::matrix(rng, n), m)));
  });
}

TEST_CASE("recognizers") {
  CHECK(is_gl_image_of_canonical_basis(ms({vec({1, 2}), vec({3, -1})})));
  CHECK_FALSE(is_gl_image_of_canonical_basis(ms({vec({1, 2}), vec({3, -1}), vec({1, 1})})));
  CHECK_FALSE(is_gl_image_of_obtuse(ms({unit(2, 0), unit(2, 1), vec({1, 1})})));
  CHECK(is_gl_image_of_obtuse(ms({vec({1, 1}), vec({1, -1}), vec({-1, -1})})));
  CHECK(count_lines(ms({unit(2, 0), vec({-2, 0}), unit(2, 1)})) == 2);
}

TEST_CASE("random_multiset") {
  CHECK(random_multiset(2, 3, 7) == random_multiset(2, 3, 7));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pair = random_multiset(2, 2, seed);
    CHECK(pair.cardinality() == 2);
    CHECK(is_spanning(pair));
  }
  auto m = random_multiset(3, 5, 1);
  CHECK(m.cardinality() == 5);
  CHECK(rank_of(m.expanded(), 3) == 3);
}

}  // TEST_SUITE

#pragma once

// Minimal seeded property runner: each case gets its own engine derived from
// the base seed, so a failing case can be replayed alone.

#include <cstdint>
#include <random>
#include <vector>

#include <doctest.h>

#include "orlizono/multisets.hpp"

namespace prop {

template <class Body>
void for_all(std::uint64_t seed, int cases, Body&& body) {
  for (int i = 0; i < cases; ++i) {
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    CAPTURE(i);
    body(rng);
  }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int integer(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<double> nonnegative(std::mt19937_64& rng, int length, double hi = 10.0) {
  std::vector<double> out(static_cast<std::size_t>(length));
  for (auto& x : out) x = uniform(rng, 0.0, hi);
  return out;
}

inline orlizono::Vector direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  orlizono::Vector u(n);
  do {
    for (int i = 0; i < n; ++i) u[i] = g(rng);
  } while (u.norm() < 1e-6);
  return u / u.norm();
}

inline orlizono::Matrix matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  orlizono::Matrix m(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  } while (std::abs(m.determinant()) < 0.2);
  return m;
}

inline orlizono::Vector vec(std::initializer_list<double> xs) {
  orlizono::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline orlizono::Vector unit(int n, int i) { return orlizono::Vector::Unit(n, i); }

}  // namespace prop

#include <cmath>

#include <doctest.h>

#include "orlizono/error.hpp"
#include "orlizono/norm.hpp"
#include "property.hpp"

using namespace orlizono;

namespace {

double p_norm(const std::vector<double>& f, double p) {
  double s = 0.0;
  for (double x : f) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}

std::vector<OrliczFunction> phis() {
  return {OrliczFunction::identity(), OrliczFunction::power(2.0), OrliczFunction::power(4.5),
          make_phi(MixPhi{{{0.5, 1.0}, {0.5, 2.0}}}), make_phi(PiecewiseLinearPhi{{{0, 0}, {1, 1}, {2, 3}}})};
}

}  // namespace

TEST_SUITE("norm") {

TEST_CASE("identity, Euclidean and all-zero inputs") {
  std::vector<double> a{2, 3}, b{3, 4}, z{0, 0, 0};
  CHECK(orlicz_norm(a, OrliczFunction::identity()) == 5.0);
  CHECK(orlicz_norm(b, OrliczFunction::power(2.0)) == doctest::Approx(5.0).epsilon(1e-12));
  for (const auto& phi : phis()) CHECK(orlicz_norm(z, phi) == 0.0);
}

TEST_CASE("negative or NaN input is rejected") {
  std::vector<double> bad{1.0, -0.5}, nan{1.0, std::nan("")};
  CHECK_THROWS_AS(orlicz_norm(bad, OrliczFunction::power(2.0)), Error);
  try {
    orlicz_norm(nan, OrliczFunction::power(2.0));
    FAIL("accepted NaN");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NegativeInput);
  }
}

TEST_CASE("a single value is returned unchanged") {
  for (const auto& phi : phis()) {
    std::vector<double> one{3.25};
    CHECK(orlicz_norm(one, phi) == 3.25);
    std::vector<double> padded{0.0, 3.25, 0.0};
    CHECK(orlicz_norm(padded, phi) == doctest::Approx(3.25).epsilon(1e-12));
  }
}

TEST_CASE("property: matches the closed form p-norm") {
  for (double p : {1.0, 1.5, 2.0, 3.0, 10.0}) {
    auto phi = OrliczFunction::power(p);
    prop::for_all(static_cast<std::uint64_t>(p * 10), 200, [&](auto& rng) {
      auto f = prop::nonnegative(rng, prop::integer(rng, 1, 8));
      double ref = p_norm(f, p);
      CHECK(orlicz_norm(f, phi) == doctest::Approx(ref).epsilon(1e-10));
    });
  }
}

TEST_CASE("property: positive homogeneity") {
  auto all = phis();
  prop::for_all(21, 300, [&](auto& rng) {
    const auto& phi = all[static_cast<std::size_t>(prop::integer(rng, 0, 4))];
    auto f = prop::nonnegative(rng, prop::integer(rng, 1, 7));
    double c = std::exp(prop::uniform(rng, -5.0, 5.0));
    auto g = f;
    for (auto& x : g) x *= c;
    CHECK(orlicz_norm(g, phi) == doctest::Approx(c * orlicz_norm(f, phi)).epsilon(1e-10));
  });
}

TEST_CASE("property: triangle inequality and monotonicity") {
  auto all = phis();
  prop::for_all(22, 300, [&](auto& rng) {
    const auto& phi = all[static_cast<std::size_t>(prop::integer(rng, 0, 4))];
    int len = prop::integer(rng, 1, 7);
    auto f = prop::nonnegative(rng, len);
    auto g = prop::nonnegative(rng, len);
    std::vector<double> sum(f.size()), bigger(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      sum[i] = f[i] + g[i];
      bigger[i] = f[i] + 0.5 * g[i];
    }
    double nf = orlicz_norm(f, phi);
    CHECK(orlicz_norm(sum, phi) <= nf + orlicz_norm(g, phi) + 1e-10 * nf);
    CHECK(orlicz_norm(bigger, phi) >= nf * (1.0 - 1e-12));
  });
}

TEST_CASE("property: the root sits between the 0.99 and 1.01 brackets") {
  auto all = phis();
  prop::for_all(23, 300, [&](auto& rng) {
    const auto& phi = all[static_cast<std::size_t>(prop::integer(rng, 0, 4))];
    auto f = prop::nonnegative(rng, prop::integer(rng, 1, 7));
    f[0] += 0.1;
    double lam = orlicz_norm(f, phi);
    CHECK(orlicz_sum(f, phi, lam) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(orlicz_sum(f, phi, 0.99 * lam) > 1.0);
    CHECK(orlicz_sum(f, phi, 1.01 * lam) < 1.0);
  });
}

}  // TEST_SUITE

#include <cmath>
#include <numeric>

#include <doctest.h>

#include "orlizono/error.hpp"
#include "orlizono/phi.hpp"
#include "property.hpp"

using namespace orlizono;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an orlizono::Error");
  return Errc::InvalidArgument;
}

std::vector<OrliczFunction> zoo() {
  return {OrliczFunction::identity(),
          OrliczFunction::power(1.5),
          OrliczFunction::power(2.0),
          OrliczFunction::power(10.0),
          make_phi(MixPhi{{{0.5, 1.0}, {0.5, 2.0}}}),
          make_phi(MixPhi{{{0.2, 1.5}, {0.3, 3.0}, {0.5, 4.0}}}),
          make_phi(PiecewiseLinearPhi{{{0, 0}, {1, 1}, {2, 3}}}),
          make_phi(PiecewiseLinearPhi{{{0, 0}, {0.5, 0.2}, {1, 1}, {4, 10}}})};
}

}  // namespace

TEST_SUITE("phi") {

TEST_CASE("make_phi accepts the identity and rejects concave powers") {
  auto id = make_phi(PowerPhi{1.0});
  CHECK(id.is_identity());
  CHECK_FALSE(id.strictly_convex());
  CHECK(id.validation().grid.size() == 1024);
  CHECK(code_of([] { make_phi(PowerPhi{0.5}); }) == Errc::NotConvex);
}

TEST_CASE("piecewise linear through (0,0),(1,1),(2,3) is valid") {
  auto phi = make_phi(PiecewiseLinearPhi{{{0, 0}, {1, 1}, {2, 3}}});
  CHECK_FALSE(phi.is_identity());
  CHECK_FALSE(phi.strictly_convex());
  CHECK(phi(1.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi(5.0) == doctest::Approx(9.0));
}

TEST_CASE("validation errors name the broken axiom") {
  CHECK(code_of([] { make_phi(PiecewiseLinearPhi{{{0, 0}, {1, 2}}}); }) == Errc::NotNormalized);
  CHECK(code_of([] { make_phi(PiecewiseLinearPhi{{{0, 0.1}, {1, 1}}}); }) == Errc::NotNormalized);
  CHECK(code_of([] { make_phi(PiecewiseLinearPhi{{{0, 0}, {0.5, 0.8}, {1, 1}}}); }) == Errc::NotConvex);
  CHECK(code_of([] { make_phi(PiecewiseLinearPhi{{{0, 0}, {0.5, 0.0}, {1, 1}}}); }) == Errc::NotIncreasing);
  CHECK(code_of([] { make_phi(MixPhi{{{0.5, 1.0}, {0.6, 2.0}}}); }) == Errc::NotNormalized);
  try {
    make_phi(PowerPhi{0.5});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("at") != std::string::npos);
  }
}

TEST_CASE("eval") {
  CHECK(OrliczFunction::power(2.0)(3.0) == 9.0);
  CHECK(make_phi(MixPhi{{{0.5, 1.0}, {0.5, 2.0}}})(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(OrliczFunction::power(3.0)(0.0) == 0.0);
  CHECK(code_of([] { OrliczFunction::power(2.0)(-1.0); }) == Errc::NegativeArgument);
}

TEST_CASE("inverse") {
  for (const auto& phi : zoo()) CHECK(phi.inverse(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(OrliczFunction::power(2.0).inverse(4.0) == doctest::Approx(2.0).epsilon(1e-14));
  auto mix = make_phi(MixPhi{{{0.5, 1.0}, {0.5, 2.0}}});
  CHECK(mix.inverse(0.75) == doctest::Approx((-1.0 + std::sqrt(7.0)) / 2.0).epsilon(1e-12));
  CHECK(mix.inverse(0.0) == 0.0);
  CHECK(code_of([&] { mix.inverse(-0.5); }) == Errc::NegativeArgument);
}

TEST_CASE("property: phi(t) <= t on [0, 1]") {
  for (const auto& phi : zoo()) {
    CAPTURE(phi.label());
    for (double t : phi.validation().grid) {
      if (t > 1.0) break;
      CHECK(phi(t) <= t + 1e-15);
    }
  }
}

TEST_CASE("property: inverse undoes eval on a log grid") {
  for (const auto& phi : zoo()) {
    CAPTURE(phi.label());
    for (int k = 0; k <= 90; ++k) {
      double t = std::pow(10.0, -6.0 + k / 10.0);
      CHECK(phi.inverse(phi(t)) == doctest::Approx(t).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: superadditivity") {
  auto phis = zoo();
  prop::for_all(11, 300, [&](auto& rng) {
    const auto& phi = phis[static_cast<std::size_t>(prop::integer(rng, 0, static_cast<int>(phis.size()) - 1))];
    auto xs = prop::nonnegative(rng, prop::integer(rng, 2, 6), 3.0);
    double lhs = phi(std::accumulate(xs.begin(), xs.end(), 0.0));
    double rhs = 0.0;
    for (double x : xs) rhs += phi(x);
    CHECK(lhs >= rhs - 1e-12 * std::max(1.0, lhs));
  });
}

TEST_CASE("only the identity is flagged as such and strict convexity is tagged") {
  CHECK(OrliczFunction::power(1.0).is_identity());
  CHECK_FALSE(OrliczFunction::power(1.0 + 1e-6).is_identity());
  CHECK(OrliczFunction::power(2.0).strictly_convex());
  CHECK(make_phi(MixPhi{{{0.5, 1.0}, {0.5, 2.0}}}).strictly_convex());
}

}  // TEST_SUITE

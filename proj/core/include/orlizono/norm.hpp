#pragma once

#include <span>

#include "orlizono/phi.hpp"

namespace orlizono {

/// Luxemburg-type norm: the unique lambda > 0 with sum_i phi(f_i / lambda) = 1,
/// or 0 when every f_i vanishes. Found by bisection on [max f, sum f], which
/// always brackets the root because phi(t) <= t on [0, 1] and phi(1) = 1.
/// Throws NegativeInput for any f_i < 0 (or NaN).
double orlicz_norm(std::span<const double> values, const OrliczFunction& phi);

/// sum_i phi(f_i / lambda); exposed for the trichotomy checks.
double orlicz_sum(std::span<const double> values, const OrliczFunction& phi, double lambda);

constexpr int kNormMaxIterations = 60;
constexpr double kNormRelTol = 1e-12;

}  // namespace orlizono

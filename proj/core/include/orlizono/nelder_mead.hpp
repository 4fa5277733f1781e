#pragma once

#include <functional>

#include "orlizono/multisets.hpp"

namespace orlizono {

struct NelderMeadOptions {
  double initial_step = 1.0;
  double tolerance = 1e-8;  // on both simplex diameter and value spread
  int max_evaluations = 20000;
};

struct NelderMeadResult {
  Vector point;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free minimization with the standard reflection (1),
/// expansion (2), contraction (1/2) and shrink (1/2) coefficients.
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& start,
                             const NelderMeadOptions& options = {});

}  // namespace orlizono

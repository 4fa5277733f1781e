#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace orlizono {

/// t^p
struct PowerPhi {
  double p = 1.0;
};

struct PowerTerm {
  double weight = 1.0;
  double p = 1.0;
};

/// sum_i w_i t^{p_i}
struct MixPhi {
  std::vector<PowerTerm> terms;
};

/// Linear interpolation through (t, y) breakpoints; the last segment is
/// extended to infinity.
struct PiecewiseLinearPhi {
  std::vector<std::pair<double, double>> points;
};

using PhiKind = std::variant<PowerPhi, MixPhi, PiecewiseLinearPhi>;

struct PhiValidation {
  std::vector<double> grid;  // 1024 points: geometric on [1e-6, 1], linear on (1, 16]
  double min_forward_difference = 0.0;
  double min_slope_increment = 0.0;  // relative, over consecutive grid slopes
  bool strictly_convex = false;
};

/// A member of the class of convex, strictly increasing gauges with
/// phi(0) = 0 and phi(1) = 1. Immutable once constructed; construction
/// validates the axioms on a sampled grid and throws on violation.
class OrliczFunction {
 public:
  static OrliczFunction identity();
  static OrliczFunction power(double p);

  double operator()(double t) const { return eval(t); }
  double eval(double t) const;
  double inverse(double y) const;

  bool is_identity() const noexcept { return identity_; }
  bool strictly_convex() const noexcept { return validation_.strictly_convex; }
  const std::string& label() const noexcept { return label_; }
  const PhiKind& kind() const noexcept { return kind_; }
  const PhiValidation& validation() const noexcept { return validation_; }

 private:
  friend OrliczFunction make_phi(PhiKind kind, std::string label);
  OrliczFunction(PhiKind kind, std::string label);

  double eval_unchecked(double t) const;

  PhiKind kind_;
  std::string label_;
  PhiValidation validation_;
  bool identity_ = false;
};

/// Validates and wraps a phi description. Throws Error with NotNormalized,
/// NotIncreasing or NotConvex naming the offending grid point.
OrliczFunction make_phi(PhiKind kind, std::string label = {});

std::string describe(const PhiKind& kind);

constexpr double kConvexitySlack = 1e-12;
constexpr double kInverseRelTol = 1e-12;

}  // namespace orlizono

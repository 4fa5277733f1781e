#include "orlizono/norm.hpp"

#include <algorithm>
#include <cmath>

#include "orlizono/error.hpp"

namespace orlizono {

double orlicz_sum(std::span<const double> values, const OrliczFunction& phi, double lambda) {
  double sum = 0.0;
  for (double f : values) sum += phi(f / lambda);
  return sum;
}

double orlicz_norm(std::span<const double> values, const OrliczFunction& phi) {
  double largest = 0.0;
  double total = 0.0;
  int positive = 0;
  for (double f : values) {
    if (!(f >= 0.0) || !std::isfinite(f)) throw Error(Errc::NegativeInput, "orlicz_norm needs finite nonnegative values");
    if (f > 0.0) {
      ++positive;
      largest = std::max(largest, f);
      total += f;
    }
  }
  if (positive == 0) return 0.0;
  if (positive == 1 || phi.is_identity()) return positive == 1 ? largest : total;

  // g(lambda) = sum phi(f/lambda) - 1 is decreasing; g(lo) >= 0 >= g(hi).
  double lo = largest;
  double hi = total;
  // Iterating past kNormRelTol to the cap costs little and keeps
  // finite-difference gradients of support functions clean.
  for (int it = 0; it < kNormMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (orlicz_sum(values, phi, mid) > 1.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace orlizono

#include "orlizono/phi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlizono/error.hpp"

namespace orlizono {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> validation_grid() {
  constexpr int kHalf = 512;
  std::vector<double> grid;
  grid.reserve(2 * kHalf);
  const double log_lo = std::log(1e-6);
  for (int k = 0; k < kHalf; ++k) {
    grid.push_back(std::exp(log_lo * (1.0 - static_cast<double>(k) / (kHalf - 1))));
  }
  grid.back() = 1.0;
  for (int k = 1; k <= kHalf; ++k) grid.push_back(1.0 + 15.0 * k / kHalf);
  return grid;
}

double power_of(double t, double p) {
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  return std::pow(t, p);
}

std::string fmt_point(double t, double y) {
  std::ostringstream os;
  os.precision(12);
  os << "t=" << t << " phi(t)=" << y;
  return os.str();
}

}  // namespace

std::string describe(const PhiKind& kind) {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const PowerPhi& k) {
                   if (k.p == 1.0) os << "id";
                   else os << "power(" << k.p << ")";
                 },
                 [&](const MixPhi& k) {
                   os << "mix(";
                   for (std::size_t i = 0; i < k.terms.size(); ++i) {
                     if (i) os << ",";
                     os << k.terms[i].weight << ":" << k.terms[i].p;
                   }
                   os << ")";
                 },
                 [&](const PiecewiseLinearPhi& k) {
                   os << "pwl(";
                   for (std::size_t i = 0; i < k.points.size(); ++i) {
                     if (i) os << ";";
                     os << k.points[i].first << "," << k.points[i].second;
                   }
                   os << ")";
                 },
             },
             kind);
  return os.str();
}

OrliczFunction::OrliczFunction(PhiKind kind, std::string label)
    : kind_(std::move(kind)), label_(std::move(label)) {
  if (label_.empty()) label_ = describe(kind_);
}

OrliczFunction make_phi(PhiKind kind, std::string label) {
  // Syntactic checks that cannot be expressed as grid violations.
  if (auto* mix = std::get_if<MixPhi>(&kind)) {
    if (mix->terms.empty()) throw Error(Errc::InvalidArgument, "mix needs at least one term");
    for (const auto& term : mix->terms) {
      if (!(term.weight > 0.0) || !std::isfinite(term.p)) {
        throw Error(Errc::InvalidArgument, "mix weights must be positive");
      }
    }
  } else if (auto* pwl = std::get_if<PiecewiseLinearPhi>(&kind)) {
    if (pwl->points.size() < 2) throw Error(Errc::InvalidArgument, "pwl needs at least two points");
    if (pwl->points.front().first != 0.0 || pwl->points.front().second != 0.0) {
      throw Error(Errc::NotNormalized, "pwl must start at (0,0)");
    }
    for (std::size_t i = 1; i < pwl->points.size(); ++i) {
      if (!(pwl->points[i].first > pwl->points[i - 1].first)) {
        throw Error(Errc::InvalidArgument, "pwl breakpoints must be strictly increasing in t");
      }
    }
  } else if (!std::isfinite(std::get<PowerPhi>(kind).p)) {
    throw Error(Errc::InvalidArgument, "power exponent must be finite");
  }

  OrliczFunction phi(std::move(kind), std::move(label));

  const double at0 = phi.eval_unchecked(0.0);
  if (at0 != 0.0) throw Error(Errc::NotNormalized, "phi(0) != 0 at " + fmt_point(0.0, at0));
  const double at1 = phi.eval_unchecked(1.0);
  if (std::abs(at1 - 1.0) > 1e-12) throw Error(Errc::NotNormalized, "phi(1) != 1 at " + fmt_point(1.0, at1));

  PhiValidation report;
  report.grid = validation_grid();
  std::vector<double> ts;
  ts.reserve(report.grid.size() + 1);
  ts.push_back(0.0);
  ts.insert(ts.end(), report.grid.begin(), report.grid.end());
  std::vector<double> ys(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ys[i] = phi.eval_unchecked(ts[i]);

  report.min_forward_difference = INFINITY;
  std::vector<double> slopes(ts.size() - 1);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double dy = ys[i + 1] - ys[i];
    report.min_forward_difference = std::min(report.min_forward_difference, dy);
    if (!(dy > 0.0)) throw Error(Errc::NotIncreasing, "not increasing at " + fmt_point(ts[i + 1], ys[i + 1]));
    slopes[i] = dy / (ts[i + 1] - ts[i]);
  }

  report.min_slope_increment = INFINITY;
  bool strict = true;
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    const double scale = std::max({1.0, std::abs(slopes[i]), std::abs(slopes[i + 1])});
    const double increment = slopes[i + 1] - slopes[i];
    if (increment < -kConvexitySlack * scale) {
      throw Error(Errc::NotConvex, "second difference negative at " + fmt_point(ts[i + 1], ys[i + 1]));
    }
    const double relative = increment / slopes[i];
    report.min_slope_increment = std::min(report.min_slope_increment, relative);
    if (!(relative > 1e-9)) strict = false;
  }
  report.strictly_convex = strict;

  bool identity = true;
  for (std::size_t i = 0; i < ts.size() && identity; ++i) {
    identity = std::abs(ys[i] - ts[i]) <= 1e-14 * std::max(1.0, ts[i]);
  }
  phi.identity_ = identity;
  phi.validation_ = std::move(report);
  return phi;
}

OrliczFunction OrliczFunction::identity() { return make_phi(PowerPhi{1.0}, "id"); }

OrliczFunction OrliczFunction::power(double p) { return make_phi(PowerPhi{p}); }

double OrliczFunction::eval(double t) const {
  if (!(t >= 0.0)) throw Error(Errc::NegativeArgument, "phi evaluated at negative argument");
  return eval_unchecked(t);
}

double OrliczFunction::eval_unchecked(double t) const {
  return std::visit(overloaded{
                        [t](const PowerPhi& k) { return power_of(t, k.p); },
                        [t](const MixPhi& k) {
                          double sum = 0.0;
                          for (const auto& term : k.terms) sum += term.weight * power_of(t, term.p);
                          return sum;
                        },
                        [t](const PiecewiseLinearPhi& k) {
                          const auto& pts = k.points;
                          std::size_t seg = 1;
                          while (seg + 1 < pts.size() && t > pts[seg].first) ++seg;
                          const auto& [t0, y0] = pts[seg - 1];
                          const auto& [t1, y1] = pts[seg];
                          return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
                        },
                    },
                    kind_);
}

double OrliczFunction::inverse(double y) const {
  if (!(y >= 0.0)) throw Error(Errc::NegativeArgument, "phi inverse at negative value");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  if (const auto* p = std::get_if<PowerPhi>(&kind_)) {
    return p->p == 1.0 ? y : std::pow(y, 1.0 / p->p);
  }
  if (const auto* pwl = std::get_if<PiecewiseLinearPhi>(&kind_)) {
    const auto& pts = pwl->points;
    std::size_t seg = 1;
    while (seg + 1 < pts.size() && y > pts[seg].second) ++seg;
    const auto& [t0, y0] = pts[seg - 1];
    const auto& [t1, y1] = pts[seg];
    return t0 + (t1 - t0) * (y - y0) / (y1 - y0);
  }
  // phi(t) <= t on [0,1] and phi(t) >= t on [1,inf) bracket the root.
  double lo = std::min(y, 1.0);
  double hi = std::max(y, 1.0);
  for (int it = 0; it < 200 && hi - lo > kInverseRelTol * 1e-3 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (eval_unchecked(mid) < y) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace orlizono

#include "orlizono/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "orlizono/error.hpp"
#include "orlizono/instance.hpp"
#include "orlizono/parallel.hpp"
#include "orlizono/report.hpp"
#include "orlizono/zonotope.hpp"

namespace orlizono {

void validate(const ExperimentConfig& cfg) {
  if (cfg.budget < 64) throw Error(Errc::ConfigError, "budget must be at least 64");
  if (cfg.dimension != 2 && cfg.dimension != 3) throw Error(Errc::ConfigError, "dimension must be 2 or 3");
  if (cfg.grid < 3) throw Error(Errc::ConfigError, "t-grid needs at least 3 points");
  for (const auto& m : cfg.instances) {
    if (m.dimension() != 2 && m.dimension() != 3)
      throw Error(Errc::ConfigError, "instances must live in dimension 2 or 3");
  }
}

Status judge(ClaimKind kind, double diff, double bars) {
  switch (kind) {
    case ClaimKind::Equal: return std::abs(diff) <= bars ? Status::Pass : Status::Fail;
    case ClaimKind::Strict:
      if (diff > bars) return Status::Pass;
      return diff < -bars ? Status::Fail : Status::Inconclusive;
    case ClaimKind::Weak: return diff >= -bars ? Status::Pass : Status::Fail;
  }
  return Status::Fail;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "FAIL";
}

VolumeBounds body_volume(const VectorMultiset& m, const OrliczFunction& phi, int budget) {
  return volume_bounds(build_sandwich(OrliczZonotope(m, phi).oracle(), budget));
}

VolumeBounds polar_volume(const VectorMultiset& m, const OrliczFunction& phi, int budget) {
  return santalo_point(OrliczZonotope(m, phi).oracle(), budget).polar_volume;
}

Estimate volume_product(const VectorMultiset& m, const OrliczFunction& phi, int budget) {
  if (!is_spanning(m)) throw Error(Errc::DegenerateBody, "volume product needs a spanning multiset");
  const auto polar = polar_volume(m, phi, budget);
  const double l1 = l1_volume(m);
  return {polar.mid * l1, polar.halfwidth * l1};
}

Estimate volume_ratio(const VectorMultiset& m, const OrliczFunction& phi, int budget) {
  if (!is_spanning(m)) throw Error(Errc::DegenerateBody, "volume ratio needs a spanning multiset");
  if (phi.is_identity()) return {1.0, 0.0};
  const auto v = body_volume(m, phi, budget);
  const double l1 = l1_volume(m);
  return {v.mid / l1, v.halfwidth / l1};
}

Matrix random_gl(int dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (;;) {
    Matrix a(dimension, dimension);
    for (int i = 0; i < dimension; ++i)
      for (int j = 0; j < dimension; ++j) a(i, j) = normal(rng);
    const Eigen::JacobiSVD<Matrix> svd(a);
    const auto& sv = svd.singularValues();
    if (std::abs(a.determinant()) >= 0.25 && sv(0) <= 10.0 * sv(dimension - 1)) return a;
  }
}

namespace {

VectorMultiset canonical_plus(int n, const std::vector<Vector>& extra) {
  VectorMultiset m = VectorMultiset::canonical_basis(n);
  for (const auto& v : extra) m.add(v);
  return m;
}

Vector unit(int n, int i, double scale = 1.0) { return scale * Vector::Unit(n, i); }

std::vector<VectorMultiset> random_part(const ExperimentConfig& cfg) {
  const int n = cfg.dimension;
  std::vector<VectorMultiset> out;
  for (int k = 0; k < cfg.batch_size; ++k)
    out.push_back(random_multiset(n, (n == 2 ? 3 : n + 1) + k % 3, cfg.seed + static_cast<std::uint64_t>(k)));
  return out;
}

Verdict error_verdict(const std::string& instance, const std::string& claim, const Error& e) {
  Verdict v;
  v.instance = instance;
  v.claim = claim;
  v.status = Status::Fail;
  v.note = "error " + std::string(errc_name(e.code())) + ": " + e.what();
  return v;
}

Verdict make_verdict(const std::string& instance, const std::string& claim, ClaimKind kind, double value,
                     double reference, double diff, double bars) {
  Verdict v;
  v.instance = instance;
  v.claim = claim;
  v.status = judge(kind, diff, bars);
  v.value = value;
  v.reference = reference;
  v.margin = diff;
  v.bars = bars;
  return v;
}

const char* kind_suffix(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::Equal: return "equality";
    case ClaimKind::Strict: return "strict";
    case ClaimKind::Weak: return "inequality";
  }
  return "";
}

ClaimKind product_claim(const VectorMultiset& m, const OrliczFunction& phi) {
  if (phi.is_identity()) return count_lines(m) == m.dimension() ? ClaimKind::Equal : ClaimKind::Strict;
  return is_gl_image_of_canonical_basis(m) ? ClaimKind::Equal : ClaimKind::Strict;
}

ClaimKind ratio_claim(const VectorMultiset& m, const OrliczFunction& phi) {
  if (phi.is_identity()) return ClaimKind::Equal;
  return is_gl_image_of_obtuse(m) ? ClaimKind::Equal : ClaimKind::Strict;
}

/// Shared driver of the two theorem suites: diff(value, reference) is
/// oriented so that the claimed inequality means diff >= 0.
template <class Functional, class Label>
std::vector<Verdict> batch_suite(const ExperimentConfig& cfg, const std::vector<VectorMultiset>& batch,
                                 const std::string& name, Functional functional, Label label, bool value_is_larger) {
  std::map<int, Estimate> references;
  std::vector<int> dims;
  for (const auto& m : batch) dims.push_back(m.dimension());
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  for (int n : dims) references[n] = functional(VectorMultiset::canonical_basis(n), cfg.phi, cfg.budget);

  std::vector<Verdict> out(batch.size());
  parallel_for(batch.size(), [&](std::size_t i) {
    const auto& m = batch[i];
    const auto hash = instance_hash(m);
    const ClaimKind kind = label(m, cfg.phi);
    const std::string claim = name + "-" + kind_suffix(kind);
    try {
      const Estimate e = functional(m, cfg.phi, cfg.budget);
      const Estimate& ref = references.at(m.dimension());
      const double diff = value_is_larger ? e.value - ref.value : ref.value - e.value;
      out[i] = make_verdict(hash, claim, kind, e.value, ref.value, diff, e.halfwidth + ref.halfwidth);
    } catch (const Error& err) {
      out[i] = error_verdict(hash, claim, err);
    }
  });
  return out;
}

}  // namespace

std::vector<VectorMultiset> product_batch(const ExperimentConfig& cfg) {
  const int n = cfg.dimension;
  auto batch = random_part(cfg);
  const auto base = VectorMultiset::canonical_basis(n);
  batch.push_back(base);
  for (std::uint64_t k = 0; k < 2; ++k) batch.push_back(gl_apply(random_gl(n, cfg.seed + 1000 + k), base));
  batch.push_back(canonical_plus(n, {unit(n, 0, -0.7)}));
  return batch;
}

std::vector<VectorMultiset> ratio_batch(const ExperimentConfig& cfg) {
  const int n = cfg.dimension;
  auto batch = random_part(cfg);
  const auto obtuse = canonical_plus(n, {unit(n, 0, -1.0)});
  batch.push_back(obtuse);
  for (std::uint64_t k = 0; k < 2; ++k) batch.push_back(gl_apply(random_gl(n, cfg.seed + 2000 + k), obtuse));
  batch.push_back(canonical_plus(n, {unit(n, 0) + unit(n, 1)}));
  return batch;
}

std::vector<Verdict> verify_volume_product(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto batch = cfg.instances.empty() ? product_batch(cfg) : cfg.instances;
  return batch_suite(cfg, batch, "volume-product", volume_product, product_claim, true);
}

std::vector<Verdict> verify_volume_ratio(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto batch = cfg.instances.empty() ? ratio_batch(cfg) : cfg.instances;
  return batch_suite(cfg, batch, "volume-ratio", volume_ratio, ratio_claim, false);
}

std::vector<Verdict> verify_dissection(const VectorMultiset& m, const ExperimentConfig& cfg) {
  if (!is_obtuse(m) || !is_spanning(m)) throw Error(Errc::NotObtuse, "dissection needs a spanning obtuse set");
  const int n = m.dimension();
  const auto hash = instance_hash(m);
  const auto whole = build_sandwich(OrliczZonotope(m, cfg.phi).oracle(), cfg.budget);
  const auto whole_bounds = volume_bounds(whole);

  std::vector<std::vector<int>> subsets;
  for_each_subset(static_cast<int>(m.size()), n, [&](const std::vector<int>& idx) {
    std::vector<Vector> vs;
    for (int i : idx) vs.push_back(m[static_cast<std::size_t>(i)].vector);
    if (rank_of(vs, n) == n) subsets.push_back(idx);
  });
  std::vector<std::optional<PolytopeSandwich>> pieces(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t k) {
    std::vector<Vector> vs;
    for (int i : subsets[k]) vs.push_back(m[static_cast<std::size_t>(i)].vector);
    pieces[k].emplace(build_sandwich(OrliczZonotope(VectorMultiset(n, vs), cfg.phi).oracle(), cfg.budget));
  });
  double sum = 0.0, sum_hw = 0.0;
  for (const auto& p : pieces) {
    const auto b = volume_bounds(*p);
    sum += b.mid;
    sum_hw += b.halfwidth;
  }
  std::vector<Verdict> out;
  out.push_back(make_verdict(hash, "dissection-volume", ClaimKind::Equal, whole_bounds.mid, sum,
                             whole_bounds.mid - sum, whole_bounds.halfwidth + sum_hw));
  out.back().note = std::to_string(pieces.size()) + " spanning pieces";

  // Membership: a point certified inside one side of the decomposition and
  // certified outside the other is a contradiction.
  Vector lo = whole.outer().vertices.front(), hi = lo;
  for (const auto& v : whole.outer().vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double tol = 1e-9 * whole.mean_width();
  const double whole_gap = sandwich_gap(whole);
  std::vector<double> piece_gap;
  for (const auto& p : pieces) piece_gap.push_back(sandwich_gap(*p));
  const int samples = cfg.membership_samples;
  std::vector<Vector> points;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u01(rng);
    points.push_back(x);
  }
  // 0 fine, 1 contradiction, 2 overlap, 3 ambiguous
  std::vector<int> kind(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t k) {
    const auto& x = points[k];
    const double wm = outer_margin(whole, x);
    const bool whole_in = wm < -(whole_gap + tol);
    const bool whole_out = wm > tol;
    int in = 0, out_count = 0;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      const double pm = outer_margin(*pieces[j], x);
      if (pm < -(piece_gap[j] + tol)) ++in;
      if (pm > tol) ++out_count;
    }
    const bool all_out = out_count == static_cast<int>(pieces.size());
    if ((whole_in && all_out) || (whole_out && in > 0)) kind[k] = 1;
    else if (in >= 2) kind[k] = 2;
    else if (!whole_in && !whole_out) kind[k] = 3;
  });
  const auto count = [&](int c) { return static_cast<double>(std::count(kind.begin(), kind.end(), c)); };
  const double box = (hi - lo).prod();
  auto membership = make_verdict(hash, "dissection-membership", ClaimKind::Weak, count(1), 0.0, -count(1), 0.0);
  membership.note = std::to_string(samples) + " points, " + std::to_string(static_cast<int>(count(3))) +
                    " within the boundary band";
  out.push_back(membership);
  const double overlap = count(2) / std::max(1, samples) * box;
  out.push_back(make_verdict(hash, "dissection-overlap", ClaimKind::Weak, overlap, 0.0, -overlap, 0.0));
  return out;
}

std::vector<Verdict> verify_merge(const VectorMultiset& m, const ExperimentConfig& cfg) {
  const auto hash = instance_hash(m);
  const auto merged = merge_parallel(m);
  const ClaimKind kind = (cfg.phi.is_identity() || merged == m) ? ClaimKind::Equal : ClaimKind::Strict;
  std::vector<Verdict> out;
  try {
    const auto r = volume_ratio(m, cfg.phi, cfg.budget), rm = volume_ratio(merged, cfg.phi, cfg.budget);
    out.push_back(make_verdict(hash, std::string("merge-ratio-") + kind_suffix(kind), kind, r.value, rm.value,
                               rm.value - r.value, r.halfwidth + rm.halfwidth));
  } catch (const Error& e) {
    out.push_back(error_verdict(hash, std::string("merge-ratio-") + kind_suffix(kind), e));
  }
  try {
    const auto p = volume_product(m, cfg.phi, cfg.budget), pm = volume_product(merged, cfg.phi, cfg.budget);
    out.push_back(make_verdict(hash, std::string("merge-product-") + kind_suffix(kind), kind, p.value, pm.value,
                               p.value - pm.value, p.halfwidth + pm.halfwidth));
  } catch (const Error& e) {
    out.push_back(error_verdict(hash, std::string("merge-product-") + kind_suffix(kind), e));
  }
  return out;
}

namespace {

Verdict convexity_verdict(const std::string& hash, const std::string& claim, const ConvexityReport& r,
                          bool asserted) {
  Verdict v;
  v.instance = hash;
  v.claim = claim;
  v.value = r.max_excess;
  v.reference = 0.0;
  v.margin = -r.max_excess;
  v.status = r.convex ? Status::Pass : (asserted ? Status::Fail : Status::Inconclusive);
  v.note = std::to_string(r.violations.size()) + " violations";
  if (!asserted) v.note += "; recorded, not asserted";
  return v;
}

Curve make_curve(const std::string& hash, const std::string& claim, const std::string& label,
                 std::vector<CurvePoint> points, const ConvexityReport& r) {
  return Curve{hash, claim, hash + " " + label, label, std::move(points), r.violations};
}

}  // namespace

std::vector<Verdict> verify_shadow(const VectorMultiset& m, const ExperimentConfig& cfg, std::vector<Curve>* curves) {
  const auto hash = instance_hash(m);
  const int pivot = cfg.pivot.value_or(default_pivot(m));
  std::vector<Verdict> out;
  ShadowSystem s;
  try {
    if (pivot < 0) throw Error(Errc::PivotRemovalNotSpanning, "no entry can be removed while keeping a spanning set");
    s = orthogonalize(m, pivot);
  } catch (const Error& e) {
    out.push_back(error_verdict(hash, "shadow-system", e));
    return out;
  }
  const auto ts = t_grid(s, cfg.grid);

  const double base_l1 = l1_volume(m);
  double deviation = 0.0;
  for (double t : ts) deviation = std::max(deviation, std::abs(l1_volume(shadow_at(s, t)) - base_l1));
  out.push_back(make_verdict(hash, "shadow-l1-volume", ClaimKind::Weak, deviation, base_l1,
                             1e-9 * std::max(1.0, base_l1) - deviation, 0.0));

  const auto proj = check_projection_invariance(s, cfg.phi, cfg.invariance_samples, cfg.seed);
  out.push_back(make_verdict(hash, "shadow-projection-invariance", ClaimKind::Weak, proj.max_deviation, 1e-9,
                             1e-9 - proj.max_deviation, 0.0));
  const auto lip = check_lipschitz(s, cfg.phi, cfg.invariance_samples, cfg.seed + 1);
  out.push_back(make_verdict(hash, "shadow-lipschitz", ClaimKind::Weak, lip.worst_excess, 0.0,
                             -lip.worst_excess, 0.0));
  out.back().note = std::to_string(lip.violations) + " of " + std::to_string(lip.samples) + " samples violate";

  std::vector<CurvePoint> volume(ts.size()), polar(ts.size());
  std::vector<std::string> errors(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    try {
      const auto lt = shadow_at(s, ts[i]);
      const auto v = body_volume(lt, cfg.phi, cfg.budget);
      const auto p = polar_volume(lt, cfg.phi, cfg.budget);
      volume[i] = {ts[i], v.mid, v.halfwidth};
      polar[i] = {ts[i], p.mid, p.halfwidth};
    } catch (const Error& e) {
      errors[i] = std::string(errc_name(e.code())) + ": " + e.what();
    }
  });
  const auto first_error = std::find_if(errors.begin(), errors.end(), [](const auto& e) { return !e.empty(); });
  if (first_error != errors.end()) {
    Verdict v;
    v.instance = hash;
    v.claim = "shadow-volume-curves";
    v.status = Status::Fail;
    v.note = "error " + *first_error;
    out.push_back(v);
  } else {
    const auto direct = curve_convexity(volume, CurveMode::Direct);
    out.push_back(convexity_verdict(hash, "shadow-volume-convex", direct, true));
    const auto polar_rec = curve_convexity(polar, CurveMode::Reciprocal);
    out.push_back(convexity_verdict(hash, "shadow-polar-reciprocal-convex", polar_rec, true));
    const auto volume_rec = curve_convexity(volume, CurveMode::Reciprocal);
    out.push_back(convexity_verdict(hash, "shadow-volume-reciprocal-convex", volume_rec, false));
    if (curves) {
      auto reciprocal = [](std::vector<CurvePoint> pts) {
        for (auto& p : pts) {
          p.halfwidth = p.halfwidth / (p.y * (p.y - p.halfwidth));
          p.y = 1.0 / p.y;
        }
        return pts;
      };
      curves->push_back(make_curve(hash, "shadow-volume-convex", "volume", volume, direct));
      curves->push_back(
          make_curve(hash, "shadow-polar-reciprocal-convex", "reciprocal polar volume", reciprocal(polar), polar_rec));
      curves->push_back(make_curve(hash, "shadow-volume-reciprocal-convex", "reciprocal volume", reciprocal(volume),
                                   volume_rec));
    }
  }

  try {
    const auto g = check_graph_inequalities(s, cfg.phi, cfg.graph_samples, cfg.seed + 2, cfg.graph_tolerance);
    out.push_back(make_verdict(hash, "shadow-graph-inequalities", ClaimKind::Weak, g.worst_excess, 0.0,
                               -g.worst_excess, 0.0));
    out.back().note = std::to_string(g.violations) + " of " + std::to_string(g.samples) + " tuples violate";

    const Vector x = sample_projection_point(s, cfg.phi, cfg.seed + 3);
    std::vector<CurvePoint> upper(ts.size()), neg_lower(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
      const OrliczZonotope z(shadow_at(s, ts[i]), cfg.phi);
      const auto gv = graph_functions([&z](const Vector& u) { return z.support(u); }, s.direction, x);
      upper[i] = {ts[i], gv.upper, 0.0};
      neg_lower[i] = {ts[i], -gv.lower, 0.0};
    });
    const auto cu = curve_convexity(upper, CurveMode::Direct, cfg.graph_tolerance);
    const auto cl = curve_convexity(neg_lower, CurveMode::Direct, cfg.graph_tolerance);
    out.push_back(convexity_verdict(hash, "shadow-upper-graph-convex", cu, true));
    out.push_back(convexity_verdict(hash, "shadow-lower-graph-concave", cl, true));
    if (curves) {
      curves->push_back(make_curve(hash, "shadow-upper-graph-convex", "upper graph", upper, cu));
      curves->push_back(make_curve(hash, "shadow-lower-graph-concave", "negated lower graph", neg_lower, cl));
    }
  } catch (const Error& e) {
    out.push_back(error_verdict(hash, "shadow-graph-functions", e));
  }
  return out;
}

int RunReport::failures() const {
  return static_cast<int>(
      std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == Status::Fail; }));
}

int RunReport::exit_code() const { return std::min(failures(), 125); }

namespace {

std::vector<VectorMultiset> or_default(const ExperimentConfig& cfg, std::vector<VectorMultiset> fallback) {
  return cfg.instances.empty() ? fallback : cfg.instances;
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
  return out;
}

}  // namespace

RunReport run(const ExperimentConfig& cfg, const std::vector<std::string>& commands) {
  validate(cfg);
  const int n = cfg.dimension;
  RunReport report;
  std::vector<Curve> curves;
  auto append = [&](std::vector<Verdict> vs) {
    for (auto& v : vs) report.verdicts.push_back(std::move(v));
  };
  for (const auto& command : commands) {
    if (command != "verify-vp" && command != "verify-vr" && command != "verify-dissection" &&
        command != "verify-merge" && command != "verify-shadow" && command != "report")
      throw Error(Errc::ConfigError, "unknown command '" + command + "'");
  }
  for (const auto& command : commands) {
    const bool all = command == "report";
    if (all || command == "verify-vp") append(verify_volume_product(cfg));
    if (all || command == "verify-vr") append(verify_volume_ratio(cfg));
    if (all || command == "verify-dissection") {
      for (const auto& m : or_default(cfg, {canonical_plus(n, {unit(n, 0, -1.0)})})) {
        try {
          append(verify_dissection(m, cfg));
        } catch (const Error& e) {
          report.verdicts.push_back(error_verdict(instance_hash(m), "dissection", e));
        }
      }
    }
    if (all || command == "verify-merge") {
      VectorMultiset doubled = VectorMultiset::canonical_basis(n);
      doubled.add(unit(n, 0));
      for (const auto& m : or_default(cfg, {doubled, canonical_plus(n, {unit(n, 0) + unit(n, 1)})}))
        append(verify_merge(m, cfg));
    }
    if (all || command == "verify-shadow") {
      for (const auto& m : or_default(cfg, {canonical_plus(n, {unit(n, 0) + unit(n, 1)})}))
        append(verify_shadow(m, cfg, &curves));
    }
  }
  if (cfg.out_dir.empty()) return report;

  for (const auto& c : curves) {
    const std::string stem = "shadow_" + c.instance + "_" + slug(c.y_label);
    write_text(cfg.out_dir / (stem + ".csv"), curve_csv(c));
    write_text(cfg.out_dir / (stem + ".svg"), curve_svg(c));
    for (auto& v : report.verdicts) {
      if (v.instance == c.instance && v.claim == c.claim) {
        v.artifacts.push_back(stem + ".csv");
        v.artifacts.push_back(stem + ".svg");
      }
    }
    report.files.push_back((cfg.out_dir / (stem + ".csv")).string());
    report.files.push_back((cfg.out_dir / (stem + ".svg")).string());
  }
  write_text(cfg.out_dir / "verdicts.csv", verdicts_csv(report.verdicts));
  report.files.push_back((cfg.out_dir / "verdicts.csv").string());
  return report;
}

}  // namespace orlizono

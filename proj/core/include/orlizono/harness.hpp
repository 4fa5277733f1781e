#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orlizono/body.hpp"
#include "orlizono/multisets.hpp"
#include "orlizono/phi.hpp"
#include "orlizono/shadow.hpp"

namespace orlizono {

struct ExperimentConfig {
  int dimension = 2;
  /// Explicit instances; when empty the suites use their default batches.
  std::vector<VectorMultiset> instances;
  OrliczFunction phi = OrliczFunction::power(2.0);
  int budget = 1024;
  int grid = 9;
  std::optional<int> pivot;
  std::filesystem::path out_dir;  // empty: no files written
  std::uint64_t seed = 1;
  int batch_size = 20;
  int invariance_samples = 1000;
  int graph_samples = 200;
  int membership_samples = 10000;
  double graph_tolerance = 1e-6;
};

/// Throws ConfigError unless budget >= 64, dimension is 2 or 3, grid >= 3
/// and every instance lives in the configured dimension range.
void validate(const ExperimentConfig& cfg);

enum class Status { Pass, Fail, Inconclusive };

/// Equal: |diff| within bars. Strict: diff above bars (inside bars is
/// inconclusive). Weak: diff not below -bars.
enum class ClaimKind { Equal, Strict, Weak };

/// diff is oriented so that positive values support the claim.
Status judge(ClaimKind kind, double diff, double bars);
const char* status_name(Status s);

struct Verdict {
  std::string instance;  // instance hash
  std::string claim;
  Status status = Status::Pass;
  double value = 0.0;
  double reference = 0.0;
  double margin = 0.0;
  double bars = 0.0;
  std::vector<std::string> artifacts;
  std::string note;
};

struct Estimate {
  double value = 0.0;
  double halfwidth = 0.0;
};

/// P = (polar volume about the Santalo point) x l1_volume.
Estimate volume_product(const VectorMultiset& m, const OrliczFunction& phi, int budget);
/// R = V(Z_phi) / l1_volume; exactly 1 for phi = Id.
Estimate volume_ratio(const VectorMultiset& m, const OrliczFunction& phi, int budget);
VolumeBounds body_volume(const VectorMultiset& m, const OrliczFunction& phi, int budget);
VolumeBounds polar_volume(const VectorMultiset& m, const OrliczFunction& phi, int budget);

/// Gaussian matrix redrawn until |det| >= 0.25 and the condition number is
/// at most 10; deterministic in seed.
Matrix random_gl(int dimension, std::uint64_t seed);

/// The default batches: `batch_size` random instances (m cycling 3, 4, 5 in
/// the plane, n+1..n+3 otherwise) plus instances whose equality status is
/// known by construction.
std::vector<VectorMultiset> product_batch(const ExperimentConfig& cfg);
std::vector<VectorMultiset> ratio_batch(const ExperimentConfig& cfg);

std::vector<Verdict> verify_volume_product(const ExperimentConfig& cfg);
std::vector<Verdict> verify_volume_ratio(const ExperimentConfig& cfg);
std::vector<Verdict> verify_dissection(const VectorMultiset& m, const ExperimentConfig& cfg);
std::vector<Verdict> verify_merge(const VectorMultiset& m, const ExperimentConfig& cfg);

struct Curve {
  std::string instance;
  std::string claim;  // the verdict this curve supports
  std::string name;
  std::string y_label;
  std::vector<CurvePoint> points;
  std::vector<int> violations;
};


std::vector<Verdict> verify_shadow(const VectorMultiset& m, const ExperimentConfig& cfg,
                                   std::vector<Curve>* curves = nullptr);

struct RunReport {
  std::vector<Verdict> verdicts;
  std::vector<std::string> files;
  int failures() const;
  /// Number of FAIL verdicts capped at 125.
  int exit_code() const;
};

/// Runs the named suites (verify-vp, verify-vr, verify-dissection,
/// verify-merge, verify-shadow, report) and writes verdicts.csv plus one
/// CSV and SVG per shadow curve into cfg.out_dir. Throws ConfigError for
/// unknown commands and IoError when writing fails.
RunReport run(const ExperimentConfig& cfg, const std::vector<std::string>& commands);

}  // namespace orlizono

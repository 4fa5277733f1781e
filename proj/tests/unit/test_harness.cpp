#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "orlizono/error.hpp"
#include "orlizono/harness.hpp"
#include "orlizono/instance.hpp"
#include "orlizono/parallel.hpp"
#include "orlizono/report.hpp"
#include "orlizono/zonotope.hpp"
#include "property.hpp"

using namespace orlizono;
using prop::unit;
using prop::vec;

namespace {

VectorMultiset ms(std::vector<Vector> vs, std::vector<int> mult = {}) {
  int n = static_cast<int>(vs.front().size());
  return VectorMultiset(n, vs, mult);
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an orlizono::Error");
  return Errc::InvalidArgument;
}

const Verdict& find(const std::vector<Verdict>& vs, const std::string& claim) {
  for (const auto& v : vs)
    if (v.claim == claim) return v;
  FAIL("missing verdict " << claim);
  return vs.front();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("orlizono_unit_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("judge") {
  CHECK(judge(ClaimKind::Equal, 0.01, 0.02) == Status::Pass);
  CHECK(judge(ClaimKind::Equal, -0.03, 0.02) == Status::Fail);
  CHECK(judge(ClaimKind::Strict, 0.03, 0.02) == Status::Pass);
  CHECK(judge(ClaimKind::Strict, 0.01, 0.02) == Status::Inconclusive);
  CHECK(judge(ClaimKind::Strict, -0.01, 0.02) == Status::Inconclusive);
  CHECK(judge(ClaimKind::Strict, -0.03, 0.02) == Status::Fail);
  CHECK(judge(ClaimKind::Weak, -0.01, 0.02) == Status::Pass);
  CHECK(judge(ClaimKind::Weak, -0.03, 0.02) == Status::Fail);
  CHECK(std::string(status_name(Status::Inconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.budget = 10;
  CHECK(code_of([&] { validate(cfg); }) == Errc::ConfigError);
  cfg = {};
  cfg.dimension = 4;
  CHECK(code_of([&] { validate(cfg); }) == Errc::ConfigError);
  cfg = {};
  cfg.grid = 2;
  CHECK(code_of([&] { validate(cfg); }) == Errc::ConfigError);
  cfg = {};
  CHECK(code_of([&] { run(cfg, {"verify-everything"}); }) == Errc::ConfigError);
}

TEST_CASE("volume ratio examples") {
  CHECK(volume_ratio(random_multiset(2, 4, 3), OrliczFunction::identity(), 256).value == 1.0);
  auto quarter = volume_ratio(VectorMultiset::canonical_basis(2), OrliczFunction::power(2.0), 1024);
  CHECK(quarter.value == doctest::Approx(std::numbers::pi / 4).epsilon(0.01));
  auto obtuse = volume_ratio(ms({unit(2, 0), unit(2, 1), vec({-1, 0})}), OrliczFunction::power(2.0), 1024);
  CHECK(obtuse.value == doctest::Approx(std::numbers::pi / 4).epsilon(0.01));
  auto fan = volume_ratio(ms({unit(2, 0), unit(2, 1), vec({1, 1})}), OrliczFunction::power(2.0), 1024);
  CHECK(fan.value + fan.halfwidth < quarter.value - quarter.halfwidth);
  CHECK(code_of([] { volume_ratio(ms({unit(2, 0)}), OrliczFunction::power(2.0), 256); }) == Errc::DegenerateBody);
}

TEST_CASE("volume product of the square") {
  auto p = volume_product(VectorMultiset::canonical_basis(2), OrliczFunction::identity(), 512);
  CHECK(p.value == doctest::Approx(8.0).epsilon(0.01));
  auto skew = volume_product(gl_apply(random_gl(2, 4), VectorMultiset::canonical_basis(2)),
                             OrliczFunction::identity(), 512);
  CHECK(skew.value == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("property: P and R are GL invariant and ignore ordering and multiplicity form") {
  auto phi = OrliczFunction::power(2.0);
  prop::for_all(71, 3, [&](auto& rng) {
    auto m = random_multiset(2, 3, rng());
    Matrix M = random_gl(2, rng());
    auto r = volume_ratio(m, phi, 1024);
    auto rm = volume_ratio(gl_apply(M, m), phi, 1024);
    CHECK(std::abs(r.value - rm.value) <= r.halfwidth + rm.halfwidth + 1e-9);
    auto p = volume_product(m, phi, 1024);
    auto pm = volume_product(gl_apply(M, m), phi, 1024);
    CHECK(std::abs(p.value - pm.value) <= 2 * (p.halfwidth + pm.halfwidth) + 1e-3 * p.value);

    auto vs = m.expanded();
    std::reverse(vs.begin(), vs.end());
    auto reversed = VectorMultiset(2, vs);
    CHECK(volume_ratio(reversed, phi, 1024).value == doctest::Approx(r.value).epsilon(1e-9));
    vs.push_back(vs.front());
    auto listed = VectorMultiset(2, vs);
    auto counted = m;
    counted.add(vs.front());
    CHECK(listed == counted);
    CHECK(volume_ratio(listed, phi, 512).value == doctest::Approx(volume_ratio(counted, phi, 512).value).epsilon(1e-12));
  });
}

TEST_CASE("theorem batches never fail") {
  ExperimentConfig cfg;
  cfg.batch_size = 4;
  cfg.budget = 512;
  for (const auto& v : verify_volume_product(cfg)) {
    CAPTURE(v.note);
    CHECK(v.status != Status::Fail);
  }
  for (const auto& v : verify_volume_ratio(cfg)) {
    CAPTURE(v.note);
    CHECK(v.status != Status::Fail);
  }
  CHECK(product_batch(cfg).size() == ratio_batch(cfg).size());
}

TEST_CASE("dissection of obtuse sets") {
  ExperimentConfig cfg;
  cfg.membership_samples = 2000;
  auto half = verify_dissection(ms({unit(2, 0), unit(2, 1), vec({-1, 0})}), cfg);
  const auto& vol = find(half, "dissection-volume");
  CHECK(vol.status == Status::Pass);
  CHECK(vol.value == doctest::Approx(std::numbers::pi / 2).epsilon(0.02));
  CHECK(find(half, "dissection-membership").value == 0.0);
  CHECK(find(half, "dissection-overlap").status == Status::Pass);
  auto full = verify_dissection(ms({unit(2, 0), unit(2, 1), vec({-1, 0}), vec({0, -1})}), cfg);
  CHECK(find(full, "dissection-volume").value == doctest::Approx(std::numbers::pi).epsilon(0.02));
  auto single = verify_dissection(VectorMultiset::canonical_basis(2), cfg);
  CHECK(find(single, "dissection-volume").status == Status::Pass);
  CHECK(code_of([&] { verify_dissection(ms({unit(2, 0), unit(2, 1), vec({1, 1})}), cfg); }) == Errc::NotObtuse);
}

TEST_CASE("merge") {
  ExperimentConfig cfg;
  auto vs = verify_merge(ms({unit(2, 0), unit(2, 1)}, {2, 1}), cfg);
  CHECK(find(vs, "merge-ratio-strict").status == Status::Pass);
  CHECK(find(vs, "merge-product-strict").status == Status::Pass);
  auto merged = verify_merge(ms({vec({2, 0}), unit(2, 1)}), cfg);
  CHECK(find(merged, "merge-ratio-equality").status == Status::Pass);
  cfg.phi = OrliczFunction::identity();
  auto id = verify_merge(ms({unit(2, 0), unit(2, 1)}, {2, 1}), cfg);
  CHECK(find(id, "merge-ratio-equality").status == Status::Pass);
}

TEST_CASE("run with no commands is empty") {
  ExperimentConfig cfg;
  auto r = run(cfg, {});
  CHECK(r.verdicts.empty());
  CHECK(r.exit_code() == 0);
  RunReport many;
  many.verdicts.assign(300, Verdict{});
  for (auto& v : many.verdicts) v.status = Status::Fail;
  CHECK(many.failures() == 300);
  CHECK(many.exit_code() == 125);
}

TEST_CASE("verify-shadow writes curves and plots") {
  ExperimentConfig cfg;
  cfg.out_dir = scratch_dir("shadow");
  cfg.graph_samples = 20;
  cfg.invariance_samples = 100;
  auto r = run(cfg, {"verify-shadow"});
  CHECK(r.exit_code() == 0);
  CHECK(find(r.verdicts, "shadow-volume-convex").status == Status::Pass);
  CHECK(find(r.verdicts, "shadow-polar-reciprocal-convex").status == Status::Pass);
  CHECK(find(r.verdicts, "shadow-l1-volume").status == Status::Pass);
  CHECK_FALSE(find(r.verdicts, "shadow-volume-convex").artifacts.empty());
  int csvs = 0;
  for (const auto& f : r.files) {
    CHECK(std::filesystem::exists(f));
    if (f.ends_with(".csv") && f.find("verdicts") == std::string::npos) {
      ++csvs;
      auto text = slurp(f);
      CHECK(text.rfind("t,value,halfwidth,violation\n", 0) == 0);
      CHECK(std::count(text.begin(), text.end(), '\n') == 10);
    }
    if (f.ends_with(".svg")) CHECK(slurp(f).find("width=\"800\" height=\"600\"") != std::string::npos);
  }
  CHECK(csvs == 5);
  std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("seeded suites are byte identical across thread counts") {
  ExperimentConfig cfg;
  cfg.batch_size = 3;
  cfg.budget = 256;
  setenv("ORLIZONO_THREADS", "1", 1);
  CHECK(thread_count() == 1);
  auto one = verdicts_csv(run(cfg, {"verify-vp", "verify-vr"}).verdicts);
  setenv("ORLIZONO_THREADS", "4", 1);
  CHECK(thread_count() == 4);
  auto four = verdicts_csv(run(cfg, {"verify-vp", "verify-vr"}).verdicts);
  unsetenv("ORLIZONO_THREADS");
  CHECK(one == four);
}

TEST_CASE("parallel_for covers every index and rethrows the first failure") {
  setenv("ORLIZONO_THREADS", "3", 1);
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) {
    hits[i] += 1;
    std::vector<int> inner(5, 0);
    parallel_for(inner.size(), [&](std::size_t j) { inner[j] = 1; });
    hits[i] += inner[4];
  });
  for (int h : hits) CHECK(h == 2);
  try {
    parallel_for(50, [](std::size_t i) {
      if (i == 17 || i == 40) throw Error(Errc::InvalidArgument, std::to_string(i));
    });
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("17") != std::string::npos);
  }
  unsetenv("ORLIZONO_THREADS");
}

}  // TEST_SUITE

TEST_SUITE("instance") {

TEST_CASE("phi specifications") {
  CHECK(parse_phi("id").is_identity());
  CHECK(parse_phi("identity").is_identity());
  CHECK(parse_phi("power:3")(2.0) == 8.0);
  CHECK(parse_phi("mix:0.5@1,0.5@2").inverse(0.75) == doctest::Approx((-1 + std::sqrt(7.0)) / 2));
  CHECK(parse_phi(R"({"type":"power","p":2})")(3.0) == 9.0);
  CHECK(parse_phi(R"({"type":"mix","terms":[{"w":0.5,"p":1},{"w":0.5,"p":2}]})")(1.0) == doctest::Approx(1.0));
  CHECK(parse_phi(R"({"type":"pwl","points":[[0,0],[1,1],[2,3]]})")(1.5) == doctest::Approx(2.0));
  CHECK(code_of([] { parse_phi("power:0.5"); }) == Errc::NotConvex);
  CHECK(code_of([] { parse_phi("power:two"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_phi("mix:0.5,0.5@2"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_phi("/nonexistent/phi.json"); }) == Errc::IoError);
  CHECK(code_of([] { parse_phi(R"({"type":"power"})"); }) == Errc::ParseError);
}

TEST_CASE("instances round trip through JSON") {
  auto m = parse_instance(R"({"dimension":2,"vectors":[[1,0],[0,1],[1,1]],"multiplicities":[1,2,1]})");
  CHECK(m.cardinality() == 4);
  CHECK(parse_instance(instance_to_json(m)) == m);
  CHECK(instance_hash(m) == instance_hash(parse_instance(instance_to_json(m))));
  CHECK(instance_hash(m).size() == 16);
  CHECK(instance_hash(m) != instance_hash(VectorMultiset::canonical_basis(2)));
  CHECK(code_of([] { parse_instance("{\"dimension\":2}"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_instance("not json"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_instance(R"({"dimension":2,"vectors":[[1,0,0]]})"); }) == Errc::DimensionMismatch);
  CHECK(code_of([] { load_instance("/nonexistent/instance.json"); }) == Errc::IoError);
}

TEST_CASE("random batches") {
  auto spec = parse_random_spec("2,4,5,9");
  CHECK(spec.dimension == 2);
  CHECK(spec.count == 4);
  CHECK(spec.instances == 5);
  CHECK(spec.seed == 9);
  auto batch = random_batch(spec);
  REQUIRE(batch.size() == 5);
  spec.instances = 2;
  auto prefix = random_batch(spec);
  CHECK(prefix[0] == batch[0]);
  CHECK(prefix[1] == batch[1]);
  for (const auto& m : batch) CHECK(m.cardinality() == 4);
  CHECK(code_of([] { parse_random_spec("2,4,5"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_random_spec("2,x,5,1"); }) == Errc::ParseError);
}

}  // TEST_SUITE

TEST_SUITE("report") {

TEST_CASE("number and field formatting") {
  CHECK(format_number(5.0) == "5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("verdict CSV") {
  Verdict v;
  v.instance = "abc";
  v.claim = "volume-ratio-strict";
  v.status = Status::Inconclusive;
  v.value = 0.5;
  v.note = "inside bars, see plot";
  auto csv = verdicts_csv({v});
  CHECK(csv.rfind("instance,claim,status,value,reference,margin,bars,artifacts,note\n", 0) == 0);
  CHECK(csv.find("abc,volume-ratio-strict,INCONCLUSIVE,0.5,") != std::string::npos);
  CHECK(csv.find("\"inside bars, see plot\"") != std::string::npos);
  CHECK(verdicts_csv({v}) == csv);
}

TEST_CASE("curve SVG marks violations") {
  Curve c;
  c.instance = "abc";
  c.name = "abc volume";
  c.y_label = "volume";
  c.points = {{0, 1, 0.01}, {1, 2, 0.01}, {2, 1, 0.01}};
  c.violations = {1};
  auto svg = curve_svg(c);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("width=\"800\" height=\"600\"") != std::string::npos);
  CHECK(svg.find("#d62728") != std::string::npos);
  auto csv = curve_csv(c);
  CHECK(csv == "t,value,halfwidth,violation\n0,1,0.01,0\n1,2,0.01,1\n2,1,0.01,0\n");
}

TEST_CASE("write_text reports IO failures") {
  CHECK(code_of([] { write_text("/proc/orlizono/forbidden.txt", "x"); }) == Errc::IoError);
}

}  // TEST_SUITE

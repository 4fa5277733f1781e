// orlizono: command line front end for the Orlicz zonotope library.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orlizono/error.hpp"
#include "orlizono/harness.hpp"
#include "orlizono/instance.hpp"
#include "orlizono/norm.hpp"
#include "orlizono/report.hpp"
#include "orlizono/shadow.hpp"
#include "orlizono/zonotope.hpp"

namespace {

using namespace orlizono;

struct Options {
  std::string instance;
  std::string random;
  std::string phi = "power:2";
  int budget = 1024;
  int grid = 9;
  int dimension = 2;
  std::string out;
  std::string direction;
  std::string values;
  std::optional<int> pivot;
  std::string op = "volume";
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) throw Error(Errc::ParseError, std::string(what) + " is empty");
  return out;
}

std::vector<VectorMultiset> instances(const Options& o) {
  std::vector<VectorMultiset> out;
  if (!o.instance.empty()) out.push_back(load_instance(o.instance));
  if (!o.random.empty()) {
    for (auto& m : random_batch(parse_random_spec(o.random))) out.push_back(std::move(m));
  }
  return out;
}

std::vector<VectorMultiset> require_instances(const Options& o) {
  auto out = instances(o);
  if (out.empty()) throw Error(Errc::ConfigError, "this command needs --instance or --random");
  return out;
}

/// Prints to stdout, or writes <out>/<name> when --out is given.
void emit(const Options& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(std::filesystem::path(o.out) / name, text);
    std::cout << "wrote " << (std::filesystem::path(o.out) / name).string() << "\n";
  }
}

std::string join(const Vector& v, char sep = ' ') {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + format_number(v[i]);
  return s;
}

int cmd_norm(const Options& o) {
  if (o.values.empty()) throw Error(Errc::ConfigError, "norm needs --values");
  const auto values = parse_list(o.values, "--values");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g\n", orlicz_norm(values, parse_phi(o.phi)));
  std::cout << buf;
  return 0;
}

int cmd_support(const Options& o) {
  if (o.direction.empty()) throw Error(Errc::ConfigError, "support needs --direction");
  const auto phi = parse_phi(o.phi);
  const auto d = parse_list(o.direction, "--direction");
  std::ostringstream os;
  os << "instance,support,point\n";
  for (const auto& m : require_instances(o)) {
    if (static_cast<int>(d.size()) != m.dimension())
      throw Error(Errc::DimensionMismatch, "--direction does not match the instance dimension");
    const Vector u = Eigen::Map<const Vector>(d.data(), m.dimension()).normalized();
    const OrliczZonotope z(m, phi);
    const double h = z.support(u);
    os << instance_hash(m) << ',' << format_number(h) << ',' << (h > 0.0 ? join(z.support_point(u)) : "") << '\n';
  }
  emit(o, "support.csv", os.str());
  return 0;
}

int cmd_volume(const Options& o) {
  const auto phi = parse_phi(o.phi);
  std::ostringstream os;
  os << "instance,lower,upper,mid,halfwidth,l1_volume,l1_estimated\n";
  for (const auto& m : require_instances(o)) {
    const auto b = body_volume(m, phi, o.budget);
    const auto l1 = l1_volume_detailed(m);
    os << instance_hash(m) << ',' << format_number(b.lower) << ',' << format_number(b.upper) << ','
       << format_number(b.mid) << ',' << format_number(b.halfwidth) << ',' << format_number(l1.value) << ','
       << (l1.estimated ? 1 : 0) << '\n';
  }
  emit(o, "volume.csv", os.str());
  return 0;
}

template <class Functional>
int cmd_functional(const Options& o, Functional f, const char* name) {
  const auto phi = parse_phi(o.phi);
  std::ostringstream os;
  os << "instance,value,halfwidth\n";
  for (const auto& m : require_instances(o)) {
    const auto e = f(m, phi, o.budget);
    os << instance_hash(m) << ',' << format_number(e.value) << ',' << format_number(e.halfwidth) << '\n';
  }
  emit(o, std::string(name) + ".csv", os.str());
  return 0;
}

int cmd_orthogonalize(const Options& o) {
  std::ostringstream os;
  os << "instance,t,vectors,l1_volume\n";
  for (const auto& m : require_instances(o)) {
    const int pivot = o.pivot.value_or(default_pivot(m));
    if (pivot < 0) throw Error(Errc::PivotRemovalNotSpanning, "no entry can be removed while keeping a spanning set");
    const auto s = orthogonalize(m, pivot);
    for (double t : t_grid(s, o.grid)) {
      const auto lt = shadow_at(s, t);
      std::string vectors;
      for (const auto& v : lt.expanded()) vectors += (vectors.empty() ? "" : ";") + join(v);
      os << instance_hash(m) << ',' << format_number(t) << ',' << csv_field(vectors) << ','
         << format_number(l1_volume(lt)) << '\n';
    }
  }
  emit(o, "orthogonalize.csv", os.str());
  return 0;
}

int cmd_body(const Options& o) {
  const auto phi = parse_phi(o.phi);
  std::ostringstream os;
  if (o.op == "volume" || o.op == "polar-volume") {
    os << "instance,lower,upper,mid,halfwidth\n";
    for (const auto& m : require_instances(o)) {
      const auto b = o.op == "volume" ? body_volume(m, phi, o.budget) : polar_volume(m, phi, o.budget);
      os << instance_hash(m) << ',' << format_number(b.lower) << ',' << format_number(b.upper) << ','
         << format_number(b.mid) << ',' << format_number(b.halfwidth) << '\n';
    }
  } else if (o.op == "santalo") {
    os << "instance,point,polar_volume,halfwidth,evaluations\n";
    for (const auto& m : require_instances(o)) {
      const auto r = santalo_point(OrliczZonotope(m, phi).oracle(), o.budget);
      os << instance_hash(m) << ',' << join(r.point) << ',' << format_number(r.polar_volume.mid) << ','
         << format_number(r.polar_volume.halfwidth) << ',' << r.evaluations << '\n';
    }
  } else {
    throw Error(Errc::ConfigError, "--op must be volume, polar-volume or santalo");
  }
  emit(o, "body_" + o.op + ".csv", os.str());
  return 0;
}

int cmd_verify(const Options& o, const std::string& command) {
  ExperimentConfig cfg;
  cfg.dimension = o.dimension;
  cfg.instances = instances(o);
  cfg.phi = parse_phi(o.phi);
  cfg.budget = o.budget;
  cfg.grid = o.grid;
  cfg.pivot = o.pivot;
  if (!o.out.empty()) cfg.out_dir = o.out;
  const auto report = run(cfg, {command});
  std::cout << verdicts_csv(report.verdicts);
  for (const auto& f : report.files) std::cerr << "wrote " << f << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric Orlicz zonotopes: volumes, polars, shadow systems and inequality checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--instance", o.instance, "instance JSON file")->check(CLI::ExistingFile);
  app.add_option("--random", o.random, "random batch n,m,count,seed");
  app.add_option("--phi", o.phi, "id, power:P, mix:W@P,..., JSON text or JSON file")->capture_default_str();
  app.add_option("--budget", o.budget, "direction budget for sandwiches")->capture_default_str();
  app.add_option("--grid", o.grid, "t-grid size for shadow systems")->capture_default_str();
  app.add_option("--dimension", o.dimension, "dimension of the default batches")->capture_default_str();
  app.add_option("--out", o.out, "output directory for CSV and SVG files");
  app.add_option("--direction", o.direction, "direction u as comma separated coordinates");
  app.add_option("--values", o.values, "nonnegative values for the norm");
  app.add_option("--pivot", o.pivot, "pivot entry index for orthogonalization");
  app.add_option("--op", o.op, "body operation: volume, polar-volume or santalo")->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"norm", "Orlicz norm of --values, 12 significant digits"},
      {"support", "support value and support point in --direction"},
      {"volume", "sandwich volume bounds and exact L1 volume"},
      {"product", "volume product P"},
      {"ratio", "volume ratio R"},
      {"orthogonalize", "shadow system table over the t-grid"},
      {"body", "generic body operation selected by --op"},
      {"verify-vp", "volume product inequality suite"},
      {"verify-vr", "volume ratio inequality suite"},
      {"verify-dissection", "dissection formula for obtuse sets"},
      {"verify-merge", "parallel merging inequalities"},
      {"verify-shadow", "shadow system convexity, Lipschitz and projection checks"},
      {"report", "all verification suites"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "norm") return cmd_norm(o);
    if (command == "support") return cmd_support(o);
    if (command == "volume") return cmd_volume(o);
    if (command == "product") return cmd_functional(o, volume_product, "product");
    if (command == "ratio") return cmd_functional(o, volume_ratio, "ratio");
    if (command == "orthogonalize") return cmd_orthogonalize(o);
    if (command == "body") return cmd_body(o);
    return cmd_verify(o, command);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

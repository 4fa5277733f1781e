#include "orlizono/instance.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orlizono/error.hpp"

namespace orlizono {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(Errc::ParseError, "bad " + what + ": '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

OrliczFunction phi_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "power") return make_phi(PowerPhi{j.at("p").get<double>()});
  if (type == "mix") {
    MixPhi mix;
    for (const auto& term : j.at("terms")) mix.terms.push_back({term.at("w").get<double>(), term.at("p").get<double>()});
    return make_phi(mix);
  }
  if (type == "pwl") {
    PiecewiseLinearPhi pwl;
    for (const auto& pt : j.at("points")) {
      if (pt.size() != 2) throw Error(Errc::ParseError, "pwl points are [t, y] pairs");
      pwl.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    return make_phi(pwl);
  }
  throw Error(Errc::ParseError, "unknown phi type '" + type + "'");
}

}  // namespace

OrliczFunction parse_phi(const std::string& spec) {
  if (spec == "id" || spec == "identity") return OrliczFunction::identity();
  if (spec.rfind("power:", 0) == 0) return make_phi(PowerPhi{parse_number(spec.substr(6), "power exponent")});
  if (spec.rfind("mix:", 0) == 0) {
    MixPhi mix;
    for (const auto& term : split(spec.substr(4), ',')) {
      const auto at = term.find('@');
      if (at == std::string::npos) throw Error(Errc::ParseError, "mix terms are written W@P");
      mix.terms.push_back({parse_number(term.substr(0, at), "mix weight"), parse_number(term.substr(at + 1), "mix exponent")});
    }
    return make_phi(mix);
  }
  const std::string text = (!spec.empty() && spec.front() == '{') ? spec : read_file(spec);
  try {
    return phi_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("phi: ") + e.what());
  }
}

VectorMultiset parse_instance(const std::string& json_text) {
  try {
    const auto j = json::parse(json_text);
    const int n = j.at("dimension").get<int>();
    if (n < 1) throw Error(Errc::ParseError, "dimension must be positive");
    std::vector<Vector> vectors;
    for (const auto& row : j.at("vectors")) {
      const auto values = row.get<std::vector<double>>();
      if (static_cast<int>(values.size()) != n)
        throw Error(Errc::DimensionMismatch, "vector of length " + std::to_string(values.size()) + " in dimension " +
                                                 std::to_string(n));
      vectors.push_back(Eigen::Map<const Vector>(values.data(), n));
    }
    std::vector<int> mults;
    if (j.contains("multiplicities")) mults = j.at("multiplicities").get<std::vector<int>>();
    return VectorMultiset(n, vectors, mults);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("instance: ") + e.what());
  }
}

VectorMultiset load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

std::string instance_to_json(const VectorMultiset& m) {
  json j;
  j["dimension"] = m.dimension();
  json vectors = json::array();
  json mults = json::array();
  for (const auto& e : m.entries()) {
    vectors.push_back(std::vector<double>(e.vector.data(), e.vector.data() + e.vector.size()));
    mults.push_back(e.multiplicity);
  }
  j["vectors"] = vectors;
  j["multiplicities"] = mults;
  return j.dump();
}

RandomSpec parse_random_spec(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(Errc::ParseError, "--random expects n,m,count,seed");
  RandomSpec r;
  r.dimension = static_cast<int>(parse_number(parts[0], "dimension"));
  r.count = static_cast<int>(parse_number(parts[1], "vector count"));
  r.instances = static_cast<int>(parse_number(parts[2], "instance count"));
  r.seed = static_cast<std::uint64_t>(parse_number(parts[3], "seed"));
  if (r.dimension < 1 || r.count < r.dimension || r.instances < 0)
    throw Error(Errc::ConfigError, "--random needs n >= 1, m >= n and count >= 0");
  return r;
}

std::vector<VectorMultiset> random_batch(const RandomSpec& spec) {
  std::vector<VectorMultiset> out;
  for (int k = 0; k < spec.instances; ++k)
    out.push_back(random_multiset(spec.dimension, spec.count, spec.seed + static_cast<std::uint64_t>(k)));
  return out;
}

std::string instance_hash(const VectorMultiset& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_to_json(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace orlizono

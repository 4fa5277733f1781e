#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "orlizono/multisets.hpp"
#include "orlizono/phi.hpp"

namespace orlizono {

/// Accepts JSON text ({"type":"power","p":2}, {"type":"mix","terms":[...]},
/// {"type":"pwl","points":[[0,0],...]}), the shorthands "id", "power:P" and
/// "mix:W@P,W@P,...", or a path to a JSON file. Throws ParseError or the
/// validation errors of make_phi.
OrliczFunction parse_phi(const std::string& spec);

/// {"dimension":n,"vectors":[[...],...],"multiplicities":[...]} with the
/// multiplicities optional. Throws ParseError or the multiset errors.
VectorMultiset parse_instance(const std::string& json_text);
VectorMultiset load_instance(const std::filesystem::path& path);
std::string instance_to_json(const VectorMultiset& m);

struct RandomSpec {
  int dimension = 2;
  int count = 3;      // vectors per instance
  int instances = 1;
  std::uint64_t seed = 1;
};

/// "n,m,count,seed". Throws ParseError.
RandomSpec parse_random_spec(const std::string& text);

/// Instance k uses seed + k, so batches are prefixes of one another.
std::vector<VectorMultiset> random_batch(const RandomSpec& spec);

/// 64-bit FNV-1a over the canonical JSON of the multiset, as 16 hex digits.
std::string instance_hash(const VectorMultiset& m);

}  // namespace orlizono

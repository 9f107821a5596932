#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "twistor/curves/sampling.hpp"
#include "twistor/decomp/subsystems.hpp"
#include "twistor/decomp/decomposition.hpp"
#include "twistor/harness/float_oracle.hpp"

namespace twistor::harness {

struct SystemSpec {
  roots::Family family;
  int rank;
  std::string name() const { return std::string(1, roots::family_letter(family)) + std::to_string(rank); }
};

/// Everything that determines a run's output.  `jobs` only changes speed and
/// is left out of the canonical form.
struct RunConfig {
  std::string command;
  std::vector<SystemSpec> systems;
  int rank_class = 0;  // 0 = all classes the system admits
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  curves::SamplingConfig sampling;
  decomp::SolverMode mode = decomp::SolverMode::Geometric;
  decomp::Budget budget;
  FloatTolerances tol;
  std::string radius = "1/1000";
  std::size_t trials = 100;
  int halvings = 5;
  nlohmann::json input;  // inline copy of a --zeta / --plane / --witness document
  unsigned jobs = 1;
};

inline nlohmann::json canonical_json(const RunConfig& c) {
  nlohmann::json systems = nlohmann::json::array();
  for (const auto& s : c.systems) systems.push_back(s.name());
  return nlohmann::json{
      {"command", c.command},
      {"systems", systems},
      {"rank_class", c.rank_class},
      {"samples", c.samples},
      {"seed", c.seed},
      {"numerator_bound", c.sampling.numerator_bound},
      {"denominators", c.sampling.denominators},
      {"mode", decomp::mode_name(c.mode)},
      {"budget",
       {{"max_exhaustive_rank", c.budget.max_exhaustive_rank},
        {"max_large_rank", c.budget.max_large_rank},
        {"allow_large", c.budget.allow_large},
        {"node_limit", c.budget.node_limit},
        {"max_subsystems", c.budget.max_subsystems}}},
      {"tolerances", {{"cluster", c.tol.cluster}, {"band_lo", c.tol.band_lo}, {"band_hi", c.tol.band_hi}}},
      {"radius", c.radius},
      {"trials", c.trials},
      {"halvings", c.halvings},
      {"input", c.input}};
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string config_key(const RunConfig& c) { return hex64(fnv1a64(canonical_json(c).dump())); }

}  // namespace twistor::harness

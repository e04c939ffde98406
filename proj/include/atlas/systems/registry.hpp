#pragma once

#include <string>
#include <vector>

#include "atlas/rng.hpp"
#include "atlas/state_space.hpp"
#include "json.hpp"

namespace atlas::systems {

struct SystemBundle {
  std::string name;
  StateSpace space;
  double micro_dt = 0.0;         // physical duration of one microscale step
  nlohmann::json params_used;    // resolved parameters, for provenance
};

std::vector<std::string> system_names();

// Builds a named system. `params` overrides that system's defaults; unknown
// keys or non-positive values are rejected with invalid_argument. `rng`
// drives initial sampling and healing.
SystemBundle make_system(const std::string& name, const nlohmann::json& params,
                         Rng& rng);

}  // namespace atlas::systems

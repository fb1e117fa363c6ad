#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

namespace toric_af {

struct RunConfig {
  std::size_t default_horizon = 200;
  unsigned precision_bits = 64;
  std::size_t period_horizon = 10'000;
  unsigned workers = 1;
  std::string format = "json";  // json | text | dot | csv
};

/// Throws ParseError on unknown keys, wrong types, non-positive bounds or an
/// unknown format.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
/// Defaults, overridden by the file named in TORIC_AF_CONFIG when set.
RunConfig config_from_environment();

}  // namespace toric_af

#include "toric_af/config.hpp"

#include <cstdlib>
#include <fstream>

#include "toric_af/error.hpp"

namespace toric_af {

namespace {

template <class T>
T positive(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw Error(ErrorKind::ParseError, "config key \"" + key + "\" must be a positive integer");
  }
  return v.get<T>();
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "default_horizon") {
      c.default_horizon = positive<std::size_t>(value, key);
    } else if (key == "precision_bits") {
      c.precision_bits = positive<unsigned>(value, key);
    } else if (key == "period_horizon") {
      c.period_horizon = positive<std::size_t>(value, key);
    } else if (key == "workers") {
      c.workers = positive<unsigned>(value, key);
    } else if (key == "format") {
      if (!value.is_string()) throw Error(ErrorKind::ParseError, "config key \"format\" must be a string");
      c.format = value.get<std::string>();
      if (c.format != "json" && c.format != "text" && c.format != "dot" && c.format != "csv") {
        throw Error(ErrorKind::ParseError, "unknown output format \"" + c.format + "\"");
      }
    } else {
      throw Error(ErrorKind::ParseError, "unknown config key \"" + key + "\"");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "config file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

RunConfig config_from_environment() {
  const char* path = std::getenv("TORIC_AF_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  return load_config(path);
}

}  // namespace toric_af

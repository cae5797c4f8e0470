#include <fstream>

#include "wh/cli.hpp"

namespace wh::cli {

using nlohmann::json;

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      if (!value.is_string()) throw ConfigError("command must be a string");
      cfg.command = value.get<std::string>();
    } else if (key == "parameters") {
      if (!value.is_object()) throw ConfigError("parameters must be an object");
      cfg.parameters = value;
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
        throw ConfigError("seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace wh::cli

#pragma once

#include "nvpulse/spin_model.hpp"

#include <json.hpp>

#include <string>

namespace nvpulse {

// Parses a JSON file; missing or malformed files raise ConfigError.
nlohmann::json load_json_file(const std::string& path);

// FNV-1a 64-bit over the canonical (key-sorted, compact) dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

// Constants table in the units used by the config files.
nlohmann::json constants_table(const Register& reg);

}  // namespace nvpulse

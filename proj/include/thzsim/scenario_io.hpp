#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "thzsim/capacity.hpp"

namespace thzsim {

/// Parses the flat key-value scenario format (`key = value`, `#` comments).
/// Keys carry explicit units (frequency_ghz, distance_m, ...); unknown and
/// duplicate keys are rejected. base_dir resolves a relative
/// absorption_table_path. Throws ParseError (with line) or ValidationError.
Scenario parse_scenario_text(std::string_view text,
                             const std::filesystem::path& base_dir = ".");

Scenario parse_scenario_file(const std::filesystem::path& path);

/// Canonical serialization: fixed key order, shortest round-trip number
/// formatting. parse(serialize(s)) reproduces s.
std::string serialize_scenario(const Scenario&);

}  // namespace thzsim

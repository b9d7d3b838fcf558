#pragma once

// JSON scenario files. Every field is optional on input (missing fields take
// the preset defaults); unknown keys are rejected.

#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "smokehouse/engine.hpp"

namespace smokehouse::config {

using nlohmann::json;

json to_json(const engine::ScenarioConfig& config);

/// Fields absent from `doc` keep the values already in `base`.
engine::ScenarioConfig from_json(const json& doc, engine::ScenarioConfig base);

/// Sets one `dotted.path=value` in a fully populated document. Array
/// elements are addressed by index (`plant.nodes.1.heat_capacity`). The
/// value is parsed as JSON when possible, otherwise taken as a string.
/// Throws ConfigError for unknown paths.
void apply_override(json& doc, std::string_view assignment);

/// Parses text as JSON; parse failures become ConfigError with line/column.
json parse_json(std::string_view text, std::string_view origin);

/// Reads a scenario: the document's "preset" (or `preset`, when given)
/// selects the base, the document is layered on top, then overrides. The
/// result is not validated.
engine::ScenarioConfig load_scenario(std::string_view text, std::string_view origin,
                                     std::span<const std::string> overrides = {});

/// Builds a scenario from a preset name and overrides alone.
engine::ScenarioConfig preset_with_overrides(std::string_view preset,
                                             std::span<const std::string> overrides = {});

std::string read_file(const std::string& path);

}  // namespace smokehouse::config

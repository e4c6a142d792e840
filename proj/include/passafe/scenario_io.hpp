#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "passafe/core_model.hpp"

namespace passafe {

// Scenario files are JSON objects whose keys are exactly the camelCase field
// names of GridScenario. Unknown keys are rejected.

/// Parses and validates. Throws ScenarioError carrying the line/column for
/// syntax errors or the offending field path for schema and bound errors.
GridScenario load_scenario(std::string_view source);
GridScenario load_scenario_file(const std::string& path);

nlohmann::json scenario_to_json(const GridScenario& scenario);
std::string serialize_scenario(const GridScenario& scenario);

}  // namespace passafe

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "passafe/runtime_sim.hpp"

namespace passafe {

/// SimConfig as a JSON object with camelCase keys. Missing keys keep their
/// defaults; unknown keys are rejected. Throws InputError.
SimConfig sim_config_from_json(const nlohmann::json& j, const std::string& where = "config");
SimConfig load_sim_config(std::string_view source);
nlohmann::json sim_config_to_json(const SimConfig& config);

/// JSONL: a config header line, one line per recorded tick followed by the
/// events of that tick, and a final outcome line.
std::string sim_trace_to_jsonl(const SimTrace& trace);

nlohmann::json sim_outcome_json(const SimTrace& trace);

}  // namespace passafe

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "passafe/checker.hpp"

namespace passafe {

// Counterexample traces as JSONL: one transition per line with the source
// tick, the robot modes, the obstacle choices, and the reached state
// (robot snapshot, obstacle snapshots, stateHash as 16 hex digits). The
// initial state is not written; it follows from the scenario.

std::string trace_to_jsonl(const GridScenario& scenario, const Trace& trace);

/// Parses the labels and hashes; snapshots in the file are informational
/// and are re-derived by replay_trace. Throws InputError naming the line.
Trace trace_from_jsonl(const GridScenario& scenario, std::string_view text);

nlohmann::json verdict_to_json(const SafetyVerdict& verdict);

}  // namespace passafe

#include "passafe/trace_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "json_fields.hpp"

namespace passafe {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

json robot_json(const RobotSnapshot& r) {
  return {{"x", r.x}, {"lane", r.lane}, {"v", r.v}, {"mode", to_string(r.mode)}};
}

json obstacles_json(const std::vector<ObstacleSnapshot>& list) {
  json out = json::array();
  for (const auto& o : list) {
    out.push_back({{"id", o.id}, {"x", o.x}, {"lane", o.lane}, {"isStatic", o.is_static}});
  }
  return out;
}

RobotMode mode_field(const detail::BasicFieldReader<InputError>& r, const std::string& key) {
  const std::string name = r.required_string(key);
  auto mode = parse_robot_mode(name);
  if (!mode) r.fail(r.path(key), "unknown robot mode '" + name + "'");
  return *mode;
}

}  // namespace

std::string trace_to_jsonl(const GridScenario& scenario, const Trace& trace) {
  std::string out;
  WorldState cur = trace.initial;
  for (const auto& step : trace.steps) {
    cur = world_step(cur, step.label.choices, scenario);
    json choices = json::array();
    for (const auto& c : step.label.choices) {
      choices.push_back({{"obstacleId", c.obstacle_id}, {"velocity", c.velocity}});
    }
    json line = {{"tick", step.label.tick},
                 {"modeBefore", to_string(step.label.mode_before)},
                 {"modeAfter", to_string(step.label.mode_after)},
                 {"choices", std::move(choices)},
                 {"robot", robot_json(cur.robot)},
                 {"obstacles", obstacles_json(cur.obstacles)},
                 {"stateHash", hex64(step.state_hash)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

Trace trace_from_jsonl(const GridScenario& scenario, std::string_view text) {
  Trace trace;
  trace.initial = initial_world_state(scenario);

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.empty()) continue;
    const std::string where = "trace line " + std::to_string(line_no);
    const json j = detail::parse_json_text(raw, where);
    detail::BasicFieldReader<InputError> r(j, where);
    r.allow_only({"tick", "modeBefore", "modeAfter", "choices", "robot", "obstacles", "stateHash"});

    TraceStep step;
    step.label.tick = r.required_int("tick");
    step.label.mode_before = mode_field(r, "modeBefore");
    step.label.mode_after = mode_field(r, "modeAfter");
    const json& choices = r.required_array("choices");
    for (std::size_t i = 0; i < choices.size(); ++i) {
      detail::BasicFieldReader<InputError> c(choices[i], r.path("choices[" + std::to_string(i) + "]"));
      c.allow_only({"obstacleId", "velocity"});
      step.label.choices.push_back(ObstacleChoice{c.required_int("obstacleId"), c.required_int("velocity")});
    }
    const std::string hash = r.required_string("stateHash");
    std::size_t used = 0;
    try {
      step.state_hash = std::stoull(hash, &used, 16);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != hash.size() || hash.empty()) r.fail(r.path("stateHash"), "expected hex digits");
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

json verdict_to_json(const SafetyVerdict& v) {
  json j = {{"outcome", to_string(v.outcome)},
            {"statesExplored", v.states_explored},
            {"maxDepth", v.max_depth}};
  if (v.counterexample) {
    j["counterexampleLength"] = v.counterexample->steps.size();
  } else {
    j["counterexampleLength"] = nullptr;
  }
  return j;
}

}  // namespace passafe

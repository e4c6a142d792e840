#include "passafe/sim_io.hpp"

#include "json_fields.hpp"

namespace passafe {

using nlohmann::json;

SimConfig sim_config_from_json(const json& j, const std::string& where) {
  detail::BasicFieldReader<InputError> r(j, where);
  r.allow_only({"dt", "trackLength", "robotStart", "robotDest", "robotMaxVel", "robotAccel",
                "robotDecel", "obstacleStart", "obstacleTrueMaxVel", "assumedObstacleMaxVel",
                "visualRange", "reactionRadius", "buffer", "collisionThreshold", "seed", "maxTicks",
                "monitorTolerance"});
  SimConfig c;
  c.dt = r.optional_number("dt", c.dt);
  c.track_length = r.optional_number("trackLength", c.track_length);
  c.robot_start = r.optional_number("robotStart", c.robot_start);
  c.robot_dest = r.optional_number("robotDest", c.robot_dest);
  c.robot_max_vel = r.optional_number("robotMaxVel", c.robot_max_vel);
  c.robot_accel = r.optional_number("robotAccel", c.robot_accel);
  c.robot_decel = r.optional_number("robotDecel", c.robot_decel);
  c.obstacle_start = r.optional_number("obstacleStart", c.obstacle_start);
  c.obstacle_true_max_vel = r.optional_number("obstacleTrueMaxVel", c.obstacle_true_max_vel);
  c.assumed_obstacle_max_vel = r.optional_number("assumedObstacleMaxVel", c.assumed_obstacle_max_vel);
  c.visual_range = r.optional_number("visualRange", c.visual_range);
  c.reaction_radius = r.optional_number("reactionRadius", c.reaction_radius);
  c.buffer = r.optional_number("buffer", c.buffer);
  c.collision_threshold = r.optional_number("collisionThreshold", c.collision_threshold);
  if (r.has("seed")) c.seed = r.required_uint64("seed");
  c.max_ticks = r.optional_int("maxTicks", c.max_ticks);
  c.monitor_tolerance = r.optional_number("monitorTolerance", c.monitor_tolerance);
  validate_sim_config(c);
  return c;
}

SimConfig load_sim_config(std::string_view source) {
  return sim_config_from_json(detail::parse_json_text(source, "config"));
}

json sim_config_to_json(const SimConfig& c) {
  return json{{"dt", c.dt},
              {"trackLength", c.track_length},
              {"robotStart", c.robot_start},
              {"robotDest", c.robot_dest},
              {"robotMaxVel", c.robot_max_vel},
              {"robotAccel", c.robot_accel},
              {"robotDecel", c.robot_decel},
              {"obstacleStart", c.obstacle_start},
              {"obstacleTrueMaxVel", c.obstacle_true_max_vel},
              {"assumedObstacleMaxVel", c.assumed_obstacle_max_vel},
              {"visualRange", c.visual_range},
              {"reactionRadius", c.reaction_radius},
              {"buffer", c.buffer},
              {"collisionThreshold", c.collision_threshold},
              {"seed", c.seed},
              {"maxTicks", c.max_ticks},
              {"monitorTolerance", c.monitor_tolerance}};
}

namespace {

json event_json(const SimEvent& e) {
  json j = {{"type", "event"}, {"tick", e.tick}, {"t", e.t}};
  if (const auto* c = std::get_if<CollisionEvent>(&e.payload)) {
    j["kind"] = "collision";
    j["robotV"] = c->robot_v;
    j["gap"] = c->gap;
    j["active"] = c->active;
  } else if (const auto* f = std::get_if<Feedback>(&e.payload)) {
    j["kind"] = "assumption_violated";
    j["estimatedObstacleVel"] = f->estimated_obstacle_vel;
    j["assumedMax"] = f->assumed_max;
  } else if (const auto* m = std::get_if<ModeChange>(&e.payload)) {
    j["kind"] = "mode_change";
    j["from"] = to_string(m->from);
    j["to"] = to_string(m->to);
  }
  return j;
}

}  // namespace

json sim_outcome_json(const SimTrace& trace) {
  return json{{"type", "outcome"},
              {"outcome", to_string(trace.outcome)},
              {"ticks", trace.ticks},
              {"activeCollisions", trace.active_collisions()},
              {"seed", trace.config.seed}};
}

std::string sim_trace_to_jsonl(const SimTrace& trace) {
  std::string out;
  auto emit = [&out](const json& j) {
    out += j.dump();
    out += '\n';
  };

  json header = sim_config_to_json(trace.config);
  header["type"] = "config";
  emit(header);

  std::size_t next_event = 0;
  auto emit_events_through = [&](int tick) {
    while (next_event < trace.events.size() && trace.events[next_event].tick <= tick) {
      emit(event_json(trace.events[next_event++]));
    }
  };
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    const auto& s = trace.states[k];
    emit(json{{"type", "tick"},
              {"tick", k},
              {"t", s.t},
              {"robotX", s.robot_x},
              {"robotV", s.robot_v},
              {"robotMode", to_string(s.robot_mode)},
              {"obstacleX", s.obstacle_x},
              {"obstacleV", s.obstacle_v},
              {"monitorTripped", s.monitor_tripped}});
    emit_events_through(static_cast<int>(k));
  }
  emit_events_through(trace.ticks);
  emit(sim_outcome_json(trace));
  return out;
}

}  // namespace passafe

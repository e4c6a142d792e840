#include "passafe/scenario_io.hpp"

#include "json_fields.hpp"

namespace passafe {

using nlohmann::json;
using Reader = detail::BasicFieldReader<ScenarioError>;

namespace {

ObstacleSpec parse_obstacle(const json& j, const std::string& where) {
  Reader r(j, where);
  r.allow_only({"id", "startCell", "lane", "isStatic", "destCell", "maxVel"});
  ObstacleSpec o;
  o.id = r.required_int("id");
  o.start_cell = r.required_int("startCell");
  o.lane = r.required_int("lane");
  o.is_static = r.required_bool("isStatic");
  if (o.is_static) {
    o.dest_cell = r.optional_int("destCell", o.start_cell);
    o.max_vel = r.optional_int("maxVel", 1);
  } else {
    o.dest_cell = r.required_int("destCell");
    o.max_vel = r.required_int("maxVel");
  }
  return o;
}

GridAssumptions parse_assumptions(const json& j, const std::string& where) {
  Reader r(j, where);
  // reactionRadius belongs to the runtime assumptions; it is accepted here so
  // one assumptions block can be shared, but the grid model ignores it.
  r.allow_only({"assumedObstacleMaxVel", "visualRadius", "buffer", "reactionRadius"});
  GridAssumptions a;
  a.assumed_obstacle_max_vel = r.required_int("assumedObstacleMaxVel");
  a.visual_radius = r.required_int("visualRadius");
  a.buffer = r.required_int("buffer");
  if (j.contains("reactionRadius")) {
    const double reaction = r.required_number("reactionRadius");
    if (!(reaction > 0.0) || reaction > a.visual_radius)
      throw ScenarioError(where + ".reactionRadius must be in (0, visualRadius]");
  }
  return a;
}

}  // namespace

GridScenario load_scenario(std::string_view source) {
  const json root = detail::parse_json_text<ScenarioError>(source, "scenario");
  Reader r(root, "scenario");
  r.allow_only({"trackLengthCells", "laneCount", "robotStartCell", "robotStartLane", "robotMaxVel",
                "robotDestCell", "obstacles", "assumptions"});

  GridScenario s;
  s.track_length_cells = r.required_int("trackLengthCells");
  s.lane_count = r.required_int("laneCount");
  s.robot_start_cell = r.required_int("robotStartCell");
  s.robot_start_lane = r.required_int("robotStartLane");
  s.robot_max_vel = r.required_int("robotMaxVel");
  s.robot_dest_cell = r.required_int("robotDestCell");

  const json& obstacles = r.required_array("obstacles");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    s.obstacles.push_back(parse_obstacle(obstacles[i], "obstacles[" + std::to_string(i) + "]"));
  }
  s.assumptions = parse_assumptions(r.required_object("assumptions"), "assumptions");

  validate_scenario(s);
  return s;
}

GridScenario load_scenario_file(const std::string& path) {
  return load_scenario(detail::read_text_file(path));
}

json scenario_to_json(const GridScenario& s) {
  json obstacles = json::array();
  for (const auto& o : s.obstacles) {
    obstacles.push_back({{"id", o.id},
                         {"startCell", o.start_cell},
                         {"lane", o.lane},
                         {"isStatic", o.is_static},
                         {"destCell", o.dest_cell},
                         {"maxVel", o.max_vel}});
  }
  return json{{"trackLengthCells", s.track_length_cells},
              {"laneCount", s.lane_count},
              {"robotStartCell", s.robot_start_cell},
              {"robotStartLane", s.robot_start_lane},
              {"robotMaxVel", s.robot_max_vel},
              {"robotDestCell", s.robot_dest_cell},
              {"obstacles", std::move(obstacles)},
              {"assumptions",
               {{"assumedObstacleMaxVel", s.assumptions.assumed_obstacle_max_vel},
                {"visualRadius", s.assumptions.visual_radius},
                {"buffer", s.assumptions.buffer}}}};
}

std::string serialize_scenario(const GridScenario& scenario) {
  return scenario_to_json(scenario).dump(2) + "\n";
}

}  // namespace passafe

#include "passafe/core_model.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace passafe {

namespace {

constexpr std::array<std::string_view, kRobotModeCount> kModeNames = {
    "Idle", "Accelerate", "Drive", "Brake", "Stop"};

[[noreturn]] void fail(const std::string& message) { throw ScenarioError(message); }

}  // namespace

std::string_view to_string(RobotMode mode) {
  return kModeNames[static_cast<std::size_t>(mode)];
}

std::optional<RobotMode> parse_robot_mode(std::string_view name) {
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (kModeNames[i] == name) return static_cast<RobotMode>(i);
  }
  return std::nullopt;
}

void validate_scenario(const GridScenario& s) {
  if (s.track_length_cells < 2) fail("trackLengthCells must be >= 2");
  if (s.lane_count < 1) fail("laneCount must be >= 1");
  if (s.robot_max_vel < 1) fail("robotMaxVel must be >= 1");
  if (s.robot_start_cell < 0) fail("robotStartCell out of range: must be >= 0");
  if (s.robot_start_cell >= s.robot_dest_cell)
    fail("robotStartCell out of range: must be < robotDestCell");
  if (s.robot_dest_cell > s.track_length_cells - 1)
    fail("robotDestCell out of range: must be <= trackLengthCells - 1");
  if (s.robot_start_lane < 0 || s.robot_start_lane >= s.lane_count)
    fail("robotStartLane: lane out of range");

  const auto& a = s.assumptions;
  if (a.assumed_obstacle_max_vel <= 0) fail("assumptions.assumedObstacleMaxVel must be > 0");
  if (a.visual_radius <= 0) fail("assumptions.visualRadius must be > 0");
  if (a.buffer <= 0) fail("assumptions.buffer must be > 0");

  std::set<int> ids;
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const auto& o = s.obstacles[i];
    const std::string where = "obstacles[" + std::to_string(i) + "]";
    if (!ids.insert(o.id).second) fail(where + ".id: duplicate obstacle id " + std::to_string(o.id));
    if (o.lane < 0 || o.lane >= s.lane_count) fail(where + ".lane: lane out of range");
    if (o.start_cell < 0 || o.start_cell >= s.track_length_cells)
      fail(where + ".startCell: cell out of range");
    if (!o.is_static) {
      if (o.dest_cell < 0 || o.dest_cell >= s.track_length_cells)
        fail(where + ".destCell: cell out of range");
      if (o.dest_cell > o.start_cell)
        fail(where + ".destCell: moving obstacle must have destCell <= startCell");
      if (o.max_vel < 1) fail(where + ".maxVel must be >= 1");
    }
  }
}

WorldState initial_world_state(const GridScenario& s) {
  WorldState w;
  w.tick = 0;
  w.robot = RobotSnapshot{s.robot_start_cell, s.robot_start_lane, 0, RobotMode::Idle};
  w.obstacles.reserve(s.obstacles.size());
  for (const auto& o : s.obstacles) {
    ObstacleSnapshot snap;
    snap.id = o.id;
    snap.x = o.start_cell;
    snap.lane = o.lane;
    // A mover that starts on its destination has already arrived.
    snap.is_static = o.is_static || o.dest_cell == o.start_cell;
    snap.dest_cell = o.is_static ? o.start_cell : o.dest_cell;
    snap.max_vel = o.is_static ? 0 : o.max_vel;
    w.obstacles.push_back(snap);
  }
  w.prev_obstacles = w.obstacles;
  return w;
}

std::vector<std::string> world_state_issues(const WorldState& w, const GridScenario& s) {
  std::vector<std::string> issues;
  auto add = [&](const std::string& m) { issues.push_back(m); };

  if (w.tick < 0) add("tick < 0");
  const auto& r = w.robot;
  if (r.x < 0 || r.x >= s.track_length_cells) add("robot.x outside track");
  if (r.x > s.robot_dest_cell) add("robot.x beyond robotDestCell");
  if (r.lane < 0 || r.lane >= s.lane_count) add("robot.lane out of range");
  if (r.v < 0 || r.v > s.robot_max_vel) add("robot.v outside [0, robotMaxVel]");
  if ((r.mode == RobotMode::Idle || r.mode == RobotMode::Stop) && r.v != 0)
    add("robot in Idle/Stop with nonzero velocity");
  if (r.mode == RobotMode::Drive && r.v != s.robot_max_vel) add("robot in Drive below robotMaxVel");

  if (w.obstacles.size() != s.obstacles.size()) add("obstacle count differs from scenario");
  if (w.prev_obstacles.size() != w.obstacles.size()) add("prevObstacles size differs from obstacles");

  const std::size_t n = std::min(w.obstacles.size(), s.obstacles.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = w.obstacles[i];
    const auto& spec = s.obstacles[i];
    const std::string where = "obstacles[" + std::to_string(i) + "]";
    if (o.id != spec.id) add(where + ".id does not match scenario");
    if (o.lane != spec.lane) add(where + ".lane does not match scenario");
    if (o.lane < 0 || o.lane >= s.lane_count) add(where + ".lane out of range");
    if (o.x < 0 || o.x >= s.track_length_cells) add(where + ".x outside track");
    if (spec.is_static) {
      if (o.x != spec.start_cell || !o.is_static) add(where + " static obstacle moved");
    } else {
      if (o.x < spec.dest_cell || o.x > spec.start_cell) add(where + ".x outside [destCell, startCell]");
      if (o.x == spec.dest_cell && !o.is_static) add(where + " arrived but not static");
      if (o.is_static && o.x != spec.dest_cell) add(where + " static before arrival");
    }
  }
  return issues;
}

GridScenario case_study_scenario(int assumed_obstacle_max_vel, int obstacle_max_vel) {
  GridScenario s;
  s.track_length_cells = 50;
  s.lane_count = 3;
  s.robot_start_cell = 0;
  s.robot_start_lane = 1;
  s.robot_max_vel = 3;
  s.robot_dest_cell = 47;
  s.obstacles.push_back(ObstacleSpec{0, 49, 1, false, 0, obstacle_max_vel});
  // Side lanes stay blocked within the visual radius along the whole drive.
  int id = 1;
  for (int lane : {0, 2}) {
    for (int cell : {12, 24, 36, 48}) {
      s.obstacles.push_back(ObstacleSpec{id++, cell, lane, true, cell, 1});
    }
  }
  s.assumptions.assumed_obstacle_max_vel = assumed_obstacle_max_vel;
  s.assumptions.visual_radius = 25;
  s.assumptions.buffer = 4;
  return s;
}

}  // namespace passafe

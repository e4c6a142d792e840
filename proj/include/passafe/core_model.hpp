#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "passafe/errors.hpp"

namespace passafe {

// Discrete design-time model: positions are cells, velocities are cells per
// tick, time advances in unit ticks. The robot drives toward increasing
// cells; moving obstacles drive toward decreasing cells.

enum class RobotMode : std::uint8_t { Idle, Accelerate, Drive, Brake, Stop };

inline constexpr int kRobotModeCount = 5;

std::string_view to_string(RobotMode mode);
std::optional<RobotMode> parse_robot_mode(std::string_view name);

/// The robot's design-time beliefs about its environment.
struct GridAssumptions {
  int assumed_obstacle_max_vel = 2;
  int visual_radius = 25;
  int buffer = 1;

  bool operator==(const GridAssumptions&) const = default;
};

struct ObstacleSpec {
  int id = 0;
  int start_cell = 0;
  int lane = 0;
  bool is_static = true;
  int dest_cell = 0;  // ignored for static obstacles
  int max_vel = 1;    // true bound; ignored for static obstacles

  bool operator==(const ObstacleSpec&) const = default;
};

struct GridScenario {
  int track_length_cells = 50;
  int lane_count = 3;
  int robot_start_cell = 0;
  int robot_start_lane = 0;
  int robot_max_vel = 3;
  int robot_dest_cell = 49;
  std::vector<ObstacleSpec> obstacles;
  GridAssumptions assumptions;

  bool operator==(const GridScenario&) const = default;
};

struct RobotSnapshot {
  int x = 0;
  int lane = 0;
  int v = 0;
  RobotMode mode = RobotMode::Idle;

  bool operator==(const RobotSnapshot&) const = default;
};

struct ObstacleSnapshot {
  int id = 0;
  int x = 0;
  int lane = 0;
  bool is_static = true;
  int dest_cell = 0;
  int max_vel = 0;

  bool operator==(const ObstacleSnapshot&) const = default;
};

struct WorldState {
  int tick = 0;
  RobotSnapshot robot;
  std::vector<ObstacleSnapshot> obstacles;
  // What the robot observes this tick: the obstacle list one tick ago.
  std::vector<ObstacleSnapshot> prev_obstacles;

  bool operator==(const WorldState&) const = default;
};

class ScenarioError : public InputError {
 public:
  using InputError::InputError;
};

/// Throws ScenarioError naming the first violated bound.
void validate_scenario(const GridScenario& scenario);

WorldState initial_world_state(const GridScenario& scenario);

/// Returns one message per violated state bound; empty when the state is
/// well-formed for the scenario.
std::vector<std::string> world_state_issues(const WorldState& world, const GridScenario& scenario);

/// Head-on case: three lanes, the robot in the middle lane, one obstacle
/// approaching on the same lane, and static obstacles occupying both side
/// lanes along the track.
GridScenario case_study_scenario(int assumed_obstacle_max_vel = 3, int obstacle_max_vel = 3);

}  // namespace passafe

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "passafe/core_model.hpp"
#include "passafe/monitor.hpp"

namespace passafe {

// Single-lane, continuous-valued, fixed-step simulation of the robot and one
// moving obstacle. The robot runs the same five-mode automaton as the grid
// model with metres and m/s; the assumption monitor watches the same
// one-tick-delayed view the robot uses.

struct SimConfig {
  double dt = 0.1;
  double track_length = 12.0;
  double robot_start = 0.0;
  double robot_dest = 11.0;
  double robot_max_vel = 0.5;
  double robot_accel = 0.5;
  double robot_decel = 0.5;
  double obstacle_start = 12.0;
  double obstacle_true_max_vel = 0.15;
  double assumed_obstacle_max_vel = 0.2;
  double visual_range = 3.0;
  double reaction_radius = 1.5;
  double buffer = 0.1;
  double collision_threshold = 0.05;
  std::uint64_t seed = 1;
  int max_ticks = 3000;
  double monitor_tolerance = 0.01;  // fraction of assumed_obstacle_max_vel

  bool operator==(const SimConfig&) const = default;
};

/// Throws InputError naming the violated bound.
void validate_sim_config(const SimConfig& config);

/// Collision look-ahead at full speed with the assumed obstacle bound:
/// the smallest reaction radius that covers the robot's braking reaction.
double derived_reaction_threshold(const SimConfig& config);

struct SimState {
  double t = 0.0;
  double robot_x = 0.0;
  double robot_v = 0.0;
  RobotMode robot_mode = RobotMode::Idle;
  double obstacle_x = 0.0;
  double obstacle_v = 0.0;  // velocity sampled for the last tick
  bool monitor_tripped = false;
};

struct CollisionEvent {
  double t = 0.0;
  double robot_v = 0.0;  // at impact
  double gap = 0.0;
  bool active = false;   // robot_v > 0
};

/// Present iff obstacle_x - robot_x <= threshold.
std::optional<CollisionEvent> detect_collision(const SimState& state, double threshold);

struct ModeChange {
  RobotMode from;
  RobotMode to;
};

struct SimEvent {
  int tick = 0;
  double t = 0.0;
  std::variant<CollisionEvent, Feedback, ModeChange> payload;
};

enum class SimOutcome { ReachedGoal, StoppedSafe, ActiveCollision, TickBudgetExhausted };

std::string_view to_string(SimOutcome outcome);

struct SimTrace {
  SimConfig config;
  std::vector<SimState> states;  // tick 0 first; empty unless recorded
  std::vector<SimEvent> events;
  SimOutcome outcome = SimOutcome::TickBudgetExhausted;
  int ticks = 0;

  int active_collisions() const;
};

/// Obstacle speed for a given tick, in (0, obstacle_true_max_vel].
using ObstacleVelocitySource = std::function<double(int tick)>;

/// Uniform draws over (0, max_vel] from a 64-bit Mersenne Twister.
ObstacleVelocitySource seeded_uniform_velocity(std::uint64_t seed, double max_vel);

struct SimOptions {
  bool record_states = true;
  ObstacleVelocitySource velocity_source;  // seeded uniform when empty
};

/// Runs one episode to its outcome or config.max_ticks. Each tick:
/// the obstacle draws a speed and moves; the monitor and the robot see the
/// obstacle where it was before that move; the robot takes its automaton
/// transition and integrates; contact is checked on the true positions.
/// The episode ends at an active collision, at the goal, or once a latched
/// monitor has brought the robot to a stop. After a passive contact the
/// obstacle passes through the robot and no further contact is checked.
SimTrace simulate(const SimConfig& config, const SimOptions& options = {});

}  // namespace passafe

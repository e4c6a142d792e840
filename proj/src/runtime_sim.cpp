#include "passafe/runtime_sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "passafe/kinematics.hpp"

namespace passafe {

namespace {

constexpr double kVelocityEps = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError("sim config: " + message);
}

struct RobotCommand {
  bool brake = false;  // collision danger or latched monitor feedback
  bool at_dest = false;
  bool near_dest = false;
};

void enter_brake(SimState& s, const SimConfig& c) {
  s.robot_v -= c.robot_decel * c.dt;
  if (s.robot_v <= kVelocityEps) {
    s.robot_v = 0.0;
    s.robot_mode = RobotMode::Stop;
  } else {
    s.robot_mode = RobotMode::Brake;
  }
}

void start_accelerating(SimState& s, const SimConfig& c) {
  s.robot_v = std::min(c.robot_accel * c.dt, c.robot_max_vel);
  s.robot_mode = s.robot_v >= c.robot_max_vel - kVelocityEps ? RobotMode::Drive : RobotMode::Accelerate;
}

// Mirrors robot_step of the grid automaton without lane changes.
void robot_transition(SimState& s, const SimConfig& c, const RobotCommand& cmd) {
  switch (s.robot_mode) {
    case RobotMode::Idle:
      if (!cmd.at_dest && !cmd.brake) start_accelerating(s, c);
      break;
    case RobotMode::Accelerate:
      if (cmd.brake) {
        enter_brake(s, c);
      } else {
        s.robot_v = s.robot_v + c.robot_accel * c.dt;
        if (s.robot_v >= c.robot_max_vel - kVelocityEps) {
          s.robot_v = c.robot_max_vel;
          s.robot_mode = RobotMode::Drive;
        }
      }
      break;
    case RobotMode::Drive:
      if (cmd.brake || cmd.near_dest) enter_brake(s, c);
      break;
    case RobotMode::Brake:
      if (cmd.brake || cmd.near_dest) {
        enter_brake(s, c);
      } else {
        s.robot_mode = RobotMode::Accelerate;
      }
      break;
    case RobotMode::Stop:
      if (cmd.at_dest) {
        s.robot_mode = RobotMode::Idle;
      } else if (!cmd.brake) {
        start_accelerating(s, c);
      }
      break;
  }
}

}  // namespace

void validate_sim_config(const SimConfig& c) {
  require(c.dt > 0.0, "dt must be > 0");
  require(c.track_length > 0.0, "trackLength must be > 0");
  require(c.robot_start >= 0.0 && c.robot_start < c.robot_dest, "robotStart must be in [0, robotDest)");
  require(c.robot_dest <= c.track_length, "robotDest must be <= trackLength");
  require(c.obstacle_start > c.robot_start && c.obstacle_start <= c.track_length,
          "obstacleStart must be in (robotStart, trackLength]");
  require(c.robot_max_vel > 0.0, "robotMaxVel must be > 0");
  require(c.robot_accel > 0.0, "robotAccel must be > 0");
  require(c.robot_decel > 0.0, "robotDecel must be > 0");
  require(c.obstacle_true_max_vel > 0.0, "obstacleTrueMaxVel must be > 0");
  require(c.assumed_obstacle_max_vel > 0.0, "assumedObstacleMaxVel must be > 0");
  require(c.visual_range > 0.0, "visualRange must be > 0");
  require(c.reaction_radius > 0.0, "reactionRadius must be > 0");
  require(c.reaction_radius <= c.visual_range, "reactionRadius must be <= visualRange");
  require(c.buffer >= 0.0, "buffer must be >= 0");
  require(c.collision_threshold > 0.0, "collisionThreshold must be > 0");
  require(c.max_ticks >= 1, "maxTicks must be >= 1");
  require(c.monitor_tolerance >= 0.0, "monitorTolerance must be >= 0");
}

double derived_reaction_threshold(const SimConfig& c) {
  const double t_brake = c.robot_max_vel / c.robot_decel;
  return collision_distance_meters(c.robot_max_vel, t_brake, c.assumed_obstacle_max_vel, c.buffer).total;
}

std::optional<CollisionEvent> detect_collision(const SimState& state, double threshold) {
  const double gap = state.obstacle_x - state.robot_x;
  if (gap > threshold) return std::nullopt;
  return CollisionEvent{state.t, state.robot_v, gap, state.robot_v > 0.0};
}

std::string_view to_string(SimOutcome outcome) {
  switch (outcome) {
    case SimOutcome::ReachedGoal: return "ReachedGoal";
    case SimOutcome::StoppedSafe: return "StoppedSafe";
    case SimOutcome::ActiveCollision: return "ActiveCollision";
    case SimOutcome::TickBudgetExhausted: return "TickBudgetExhausted";
  }
  return "?";
}

int SimTrace::active_collisions() const {
  return static_cast<int>(std::count_if(events.begin(), events.end(), [](const SimEvent& e) {
    const auto* c = std::get_if<CollisionEvent>(&e.payload);
    return c != nullptr && c->active;
  }));
}

ObstacleVelocitySource seeded_uniform_velocity(std::uint64_t seed, double max_vel) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng, max_vel](int) {
    // 53 random bits mapped onto (0, 1]; explicit so that every platform
    // draws the same sequence.
    const double unit = static_cast<double>(((*rng)() >> 11) + 1) * 0x1.0p-53;
    return unit * max_vel;
  };
}

SimTrace simulate(const SimConfig& c, const SimOptions& options) {
  validate_sim_config(c);

  SimTrace trace;
  trace.config = c;
  const ObstacleVelocitySource next_velocity =
      options.velocity_source ? options.velocity_source
                              : seeded_uniform_velocity(c.seed, c.obstacle_true_max_vel);

  AssumptionMonitor monitor(MonitorAssumptions{c.assumed_obstacle_max_vel, c.visual_range,
                                               c.reaction_radius, c.monitor_tolerance});
  const double danger_distance = derived_reaction_threshold(c);
  const double reaction_range = std::min(c.visual_range, c.reaction_radius);

  SimState s;
  s.robot_x = c.robot_start;
  s.obstacle_x = c.obstacle_start;
  if (options.record_states) trace.states.push_back(s);

  bool obstacle_passed = false;
  for (int tick = 0; tick < c.max_ticks; ++tick) {
    const double t_next = (tick + 1) * c.dt;
    const double perceived_obstacle_x = s.obstacle_x;

    const double u = next_velocity(tick);
    if (!(u > 0.0) || u > c.obstacle_true_max_vel) {
      throw InputError("obstacle velocity " + std::to_string(u) + " outside (0, obstacleTrueMaxVel]");
    }
    s.obstacle_v = u;
    s.obstacle_x -= u * c.dt;

    if (auto fb = monitor.observe(Observation{t_next, s.robot_x, s.robot_v, perceived_obstacle_x})) {
      trace.events.push_back(SimEvent{tick + 1, t_next, *fb});
    }
    s.monitor_tripped = monitor.violation_latched();

    const double perceived_gap = perceived_obstacle_x - s.robot_x;
    const bool danger =
        perceived_gap >= 0.0 && perceived_gap <= reaction_range && perceived_gap <= danger_distance;
    RobotCommand cmd;
    cmd.brake = danger || s.monitor_tripped;
    cmd.at_dest = s.robot_x >= c.robot_dest;
    cmd.near_dest = c.robot_dest - s.robot_x <=
                    s.robot_v * s.robot_v / (2.0 * c.robot_decel) + s.robot_v * c.dt;

    const RobotMode before = s.robot_mode;
    robot_transition(s, c, cmd);

    s.robot_x += s.robot_v * c.dt;
    bool arrived = false;
    if (s.robot_x >= c.robot_dest) {
      s.robot_x = c.robot_dest;
      s.robot_v = 0.0;
      s.robot_mode = RobotMode::Idle;
      arrived = true;
    }
    s.t = t_next;
    if (s.robot_mode != before) {
      trace.events.push_back(SimEvent{tick + 1, t_next, ModeChange{before, s.robot_mode}});
    }
    if (options.record_states) trace.states.push_back(s);
    trace.ticks = tick + 1;

    if (!obstacle_passed) {
      if (auto hit = detect_collision(s, c.collision_threshold)) {
        trace.events.push_back(SimEvent{tick + 1, t_next, *hit});
        if (hit->active) {
          trace.outcome = SimOutcome::ActiveCollision;
          return trace;
        }
        obstacle_passed = true;
      }
    }
    if (arrived) {
      trace.outcome = SimOutcome::ReachedGoal;
      return trace;
    }
    if (s.monitor_tripped && s.robot_v == 0.0) {
      trace.outcome = SimOutcome::StoppedSafe;
      return trace;
    }
  }
  trace.outcome = SimOutcome::TickBudgetExhausted;
  return trace;
}

}  // namespace passafe

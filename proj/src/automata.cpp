#include "passafe/automata.hpp"

#include <algorithm>
#include <string>

#include "passafe/kinematics.hpp"

namespace passafe {

namespace {

bool lane_free_ahead(int lane, const RobotSnapshot& robot, const WorldState& world,
                     const GridScenario& scenario) {
  for (const auto& obs : world.prev_obstacles) {
    if (obs.lane != lane) continue;
    const int gap = obs.x - robot.x;
    if (gap >= 0 && gap <= scenario.assumptions.visual_radius) return false;
  }
  return true;
}

bool near_destination(const RobotSnapshot& robot, const GridScenario& scenario) {
  return scenario.robot_dest_cell - robot.x <= braking_distance_cells(robot.v);
}

void enter_brake(RobotSnapshot& r) {
  r.v = std::max(r.v - 1, 0);
  r.mode = r.v == 0 ? RobotMode::Stop : RobotMode::Brake;
}

void start_accelerating(RobotSnapshot& r, const GridScenario& scenario) {
  r.v = 1;
  r.mode = r.v == scenario.robot_max_vel ? RobotMode::Drive : RobotMode::Accelerate;
}

}  // namespace

bool can_move(const ObstacleSnapshot& obstacle) {
  return !obstacle.is_static && obstacle.x > obstacle.dest_cell;
}

std::optional<int> lane_change_possible(const RobotSnapshot& robot, const WorldState& world,
                                        const GridScenario& scenario) {
  for (int lane : {robot.lane - 1, robot.lane + 1}) {
    if (lane < 0 || lane >= scenario.lane_count) continue;
    if (lane_free_ahead(lane, robot, world, scenario)) return lane;
  }
  return std::nullopt;
}

RobotSnapshot robot_step(const RobotSnapshot& robot, const WorldState& world,
                         const GridScenario& scenario) {
  RobotSnapshot next = robot;
  const bool at_dest = robot.x >= scenario.robot_dest_cell;
  const bool danger = collision_danger(robot, world.prev_obstacles, scenario);

  switch (robot.mode) {
    case RobotMode::Idle:
      if (!at_dest && !danger) start_accelerating(next, scenario);
      break;

    case RobotMode::Accelerate:
      if (danger) {
        enter_brake(next);
      } else {
        next.v = std::min(robot.v + 1, scenario.robot_max_vel);
        if (next.v == scenario.robot_max_vel) next.mode = RobotMode::Drive;
      }
      break;

    case RobotMode::Drive:
      if (danger || near_destination(robot, scenario)) enter_brake(next);
      break;

    case RobotMode::Brake:
      if (danger) {
        if (auto lane = lane_change_possible(robot, world, scenario)) {
          next.lane = *lane;
          next.mode = RobotMode::Accelerate;
        } else {
          enter_brake(next);
        }
      } else if (near_destination(robot, scenario)) {
        enter_brake(next);
      } else {
        next.mode = RobotMode::Accelerate;
      }
      break;

    case RobotMode::Stop:
      if (at_dest) {
        next.mode = RobotMode::Idle;
      } else if (!danger) {
        start_accelerating(next, scenario);
      }
      break;
  }

  next.x = std::min(next.x + next.v, scenario.robot_dest_cell);
  if (next.x == scenario.robot_dest_cell && next.v > 0) {
    next.v = 0;
    next.mode = RobotMode::Idle;
  }
  return next;
}

std::vector<ChoiceVector> enumerate_obstacle_choices(const WorldState& world) {
  std::vector<ChoiceVector> result{ChoiceVector{}};
  for (const auto& obs : world.obstacles) {
    if (!can_move(obs)) continue;
    std::vector<ChoiceVector> expanded;
    expanded.reserve(result.size() * static_cast<std::size_t>(obs.max_vel));
    for (const auto& prefix : result) {
      for (int v = 1; v <= obs.max_vel; ++v) {
        ChoiceVector c = prefix;
        c.push_back(ObstacleChoice{obs.id, v});
        expanded.push_back(std::move(c));
      }
    }
    result = std::move(expanded);
  }
  return result;
}

void validate_choices(const WorldState& world, const ChoiceVector& choices) {
  std::size_t k = 0;
  for (const auto& obs : world.obstacles) {
    if (!can_move(obs)) continue;
    if (k >= choices.size())
      throw InvalidChoiceError("too few obstacle choices: missing obstacle " + std::to_string(obs.id));
    const auto& c = choices[k++];
    if (c.obstacle_id != obs.id)
      throw InvalidChoiceError("choice for obstacle " + std::to_string(c.obstacle_id) +
                               " where obstacle " + std::to_string(obs.id) + " was expected");
    if (c.velocity < 1 || c.velocity > obs.max_vel)
      throw InvalidChoiceError("velocity " + std::to_string(c.velocity) + " for obstacle " +
                               std::to_string(obs.id) + " outside [1, " +
                               std::to_string(obs.max_vel) + "]");
  }
  if (k != choices.size())
    throw InvalidChoiceError("too many obstacle choices: expected " + std::to_string(k) + ", got " +
                             std::to_string(choices.size()));
}

WorldState world_step(const WorldState& world, const ChoiceVector& choices,
                      const GridScenario& scenario) {
  validate_choices(world, choices);

  WorldState next;
  next.tick = world.tick + 1;
  next.prev_obstacles = world.obstacles;
  next.obstacles = world.obstacles;

  std::size_t k = 0;
  for (auto& obs : next.obstacles) {
    if (!can_move(obs)) continue;
    obs.x = std::max(obs.x - choices[k++].velocity, obs.dest_cell);
    if (obs.x == obs.dest_cell) obs.is_static = true;
  }

  next.robot = robot_step(world.robot, world, scenario);
  return next;
}

}  // namespace passafe

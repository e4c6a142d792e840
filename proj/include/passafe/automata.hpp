#pragma once

#include <optional>
#include <vector>

#include "passafe/core_model.hpp"
#include "passafe/errors.hpp"

namespace passafe {

/// Velocity picked by one moving obstacle for one tick, in [1, maxVel].
struct ObstacleChoice {
  int obstacle_id = 0;
  int velocity = 1;

  bool operator==(const ObstacleChoice&) const = default;
  auto operator<=>(const ObstacleChoice&) const = default;
};

/// One entry per obstacle that can still move, in obstacle-list order.
using ChoiceVector = std::vector<ObstacleChoice>;

/// Records one synchronous world step.
struct TransitionLabel {
  int tick = 0;  // tick of the source state
  RobotMode mode_before = RobotMode::Idle;
  RobotMode mode_after = RobotMode::Idle;
  ChoiceVector choices;

  bool operator==(const TransitionLabel&) const = default;
};

class InvalidChoiceError : public InputError {
 public:
  using InputError::InputError;
};

/// True when the obstacle still has a move left: not static and not arrived.
bool can_move(const ObstacleSnapshot& obstacle);

/// Adjacent lane whose stretch ahead of the robot (up to the visual radius,
/// on the delayed view) is free; the lower lane index wins ties.
std::optional<int> lane_change_possible(const RobotSnapshot& robot, const WorldState& world,
                                        const GridScenario& scenario);

/// Robot automaton step. Guards read world.prev_obstacles.
///
///   Idle       -> Accelerate (v = 1) unless at destination or in danger
///   Accelerate -> Brake on danger, else v += 1 and Drive once v = vMax
///   Drive      -> Brake on danger or near destination
///   Brake      -> on danger: lane change and Accelerate if a side lane is
///                 free, else v -= 1; near destination: v -= 1; otherwise
///                 back to Accelerate. v = 0 means Stop.
///   Stop       -> Idle at destination, Accelerate (v = 1) once danger clears
///
/// Entering Brake removes one unit of velocity immediately. The robot then
/// advances by its new velocity, capped at the destination; reaching the
/// destination puts it in Idle with v = 0.
RobotSnapshot robot_step(const RobotSnapshot& robot, const WorldState& world,
                         const GridScenario& scenario);

/// Cartesian product over movable obstacles of {1..maxVel}, lexicographic
/// order. A world without movable obstacles has exactly one empty vector.
std::vector<ChoiceVector> enumerate_obstacle_choices(const WorldState& world);

/// Throws InvalidChoiceError unless `choices` is one of
/// enumerate_obstacle_choices(world).
void validate_choices(const WorldState& world, const ChoiceVector& choices);

/// Synchronous step: obstacles move by their chosen velocity (clamped at
/// their destination, where they become static), the robot steps against
/// the old world, and prev_obstacles takes the old obstacle list.
WorldState world_step(const WorldState& world, const ChoiceVector& choices,
                      const GridScenario& scenario);

}  // namespace passafe

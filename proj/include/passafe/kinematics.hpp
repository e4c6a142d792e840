#pragma once

#include <span>

#include "passafe/core_model.hpp"

namespace passafe {

/// Distance covered by a robot that moves with its current velocity each
/// tick and then loses one cell/tick of velocity, until it stands still:
/// v + (v-1) + ... + 1 = v(v+1)/2.
int braking_distance_cells(int v);

/// Unit deceleration: v ticks.
int ticks_to_stop(int v);

/// Distance an obstacle at the assumed maximum velocity covers while the
/// robot brakes from v_robot.
int obstacle_driving_distance_cells(int v_robot, int assumed_obs_max_vel);

/// The three terms of the collision look-ahead distance and their sum.
struct CollisionDistance {
  double d_brake = 0.0;
  double d_obstacle = 0.0;
  double buffer = 0.0;
  double total = 0.0;
};

/// Continuous form: d_brake = v·t_brake, d_obstacle = v_obs_max·t_brake,
/// total = d_brake + d_obstacle + buffer.
CollisionDistance collision_distance_meters(double v_robot, double t_brake, double v_obs_max,
                                            double buffer);

/// Collision-danger guard of the robot automaton, evaluated against an
/// observed obstacle list. Uses the robot's maximum velocity, never its
/// current one. Static obstacles use the braking distance for vMax + 1 and
/// no buffer.
bool collision_danger(const RobotSnapshot& robot, std::span<const ObstacleSnapshot> observed,
                      const GridScenario& scenario);

/// Same guard on the world's delayed view (prev_obstacles).
bool collision_danger(const WorldState& world, const GridScenario& scenario);

/// Passive-safety invariant on the real (current) obstacle positions: any
/// obstacle one cell ahead on the robot's lane requires the robot to stand.
bool is_passive_safe(const WorldState& world);

}  // namespace passafe

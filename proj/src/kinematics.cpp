#include "passafe/kinematics.hpp"

namespace passafe {

int braking_distance_cells(int v) { return v * (v + 1) / 2; }

int ticks_to_stop(int v) { return v; }

int obstacle_driving_distance_cells(int v_robot, int assumed_obs_max_vel) {
  return assumed_obs_max_vel * ticks_to_stop(v_robot);
}

CollisionDistance collision_distance_meters(double v_robot, double t_brake, double v_obs_max,
                                            double buffer) {
  CollisionDistance d;
  d.d_brake = v_robot * t_brake;
  d.d_obstacle = v_obs_max * t_brake;
  d.buffer = buffer;
  d.total = d.d_brake + d.d_obstacle + d.buffer;
  return d;
}

bool collision_danger(const RobotSnapshot& robot, std::span<const ObstacleSnapshot> observed,
                      const GridScenario& scenario) {
  const int v_max = scenario.robot_max_vel;
  const auto& a = scenario.assumptions;
  for (const auto& obs : observed) {
    if (obs.lane != robot.lane) continue;
    if (robot.x > obs.x || obs.x - robot.x > a.visual_radius) continue;
    if (!obs.is_static) {
      const int reach = robot.x + braking_distance_cells(v_max) +
                        obstacle_driving_distance_cells(v_max, a.assumed_obstacle_max_vel);
      if (reach >= obs.x - a.buffer) return true;
    } else if (robot.x + braking_distance_cells(v_max + 1) >= obs.x) {
      return true;
    }
  }
  return false;
}

bool collision_danger(const WorldState& world, const GridScenario& scenario) {
  return collision_danger(world.robot, world.prev_obstacles, scenario);
}

bool is_passive_safe(const WorldState& world) {
  const auto& r = world.robot;
  if (r.v == 0) return true;
  for (const auto& obs : world.obstacles) {
    if (r.lane == obs.lane && obs.x > r.x && obs.x - r.x <= 1) return false;
  }
  return true;
}

}  // namespace passafe

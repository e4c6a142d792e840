#include "passafe/monitor.hpp"

#include <cstdio>

namespace passafe {

double estimate_obstacle_velocity(const Observation& prev, const Observation& cur) {
  const double dt = cur.t - prev.t;
  if (!(dt > 0.0)) throw InputError("observation time delta must be positive");
  return (prev.obstacle_x - cur.obstacle_x) / dt;
}

AssumptionMonitor::AssumptionMonitor(MonitorAssumptions assumptions)
    : assumptions_(assumptions) {}

std::optional<Feedback> AssumptionMonitor::observe(const Observation& obs) {
  if (last_ && !(obs.t > last_->t)) {
    throw InputError("observation out of order: t=" + std::to_string(obs.t) +
                     " after t=" + std::to_string(last_->t));
  }
  const std::optional<Observation> prev = last_;
  last_ = obs;
  if (!prev || latched_) return std::nullopt;

  const double estimate = estimate_obstacle_velocity(*prev, obs);
  const double gap = obs.obstacle_x - obs.robot_x;
  const double bound = assumptions_.assumed_obstacle_max_vel + assumptions_.tolerance();
  // The reaction area lies in front of the robot.
  if (estimate <= bound || gap < 0.0 || gap > assumptions_.reaction_radius) return std::nullopt;

  latched_ = true;
  char reason[96];
  std::snprintf(reason, sizeof reason, "obstacle velocity %.4f m/s exceeds assumed %.4f m/s",
                estimate, assumptions_.assumed_obstacle_max_vel);
  log_.push_back(LogEntry{obs.t, reason});
  return Feedback{obs.t, FeedbackKind::AssumptionViolated, estimate,
                  assumptions_.assumed_obstacle_max_vel};
}

}  // namespace passafe

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "passafe/errors.hpp"

namespace passafe {

/// One sample delivered to the monitor. obstacle_x is the position the
/// robot currently perceives, i.e. one tick old.
struct Observation {
  double t = 0.0;
  double robot_x = 0.0;
  double robot_v = 0.0;
  double obstacle_x = 0.0;
};

/// Runtime counterpart of the design-time assumptions, in metres and m/s.
struct MonitorAssumptions {
  double assumed_obstacle_max_vel = 0.2;
  double visual_range = 3.0;
  double reaction_radius = 1.5;
  double tolerance_fraction = 0.01;  // of assumed_obstacle_max_vel

  double tolerance() const { return tolerance_fraction * assumed_obstacle_max_vel; }
};

enum class FeedbackKind { AssumptionViolated };

struct Feedback {
  double t = 0.0;
  FeedbackKind kind = FeedbackKind::AssumptionViolated;
  double estimated_obstacle_vel = 0.0;
  double assumed_max = 0.0;
};

/// Two-point finite difference, positive while the obstacle approaches.
/// Throws InputError unless cur.t > prev.t.
double estimate_obstacle_velocity(const Observation& prev, const Observation& cur);

/// Assumption monitor for one episode. It watches the obstacle velocity and,
/// once the assumed bound is exceeded while the obstacle is inside the
/// reaction radius, emits a single AssumptionViolated feedback and latches.
/// The latch never resets; the owner keeps braking while it is set.
class AssumptionMonitor {
 public:
  struct LogEntry {
    double t;
    std::string reason;
  };

  explicit AssumptionMonitor(MonitorAssumptions assumptions);

  /// Throws InputError for timestamps that do not strictly increase.
  std::optional<Feedback> observe(const Observation& obs);

  bool violation_latched() const { return latched_; }
  const MonitorAssumptions& assumptions() const { return assumptions_; }
  const std::optional<Observation>& last_observation() const { return last_; }
  const std::vector<LogEntry>& feedback_log() const { return log_; }

 private:
  MonitorAssumptions assumptions_;
  std::optional<Observation> last_;
  bool latched_ = false;
  std::vector<LogEntry> log_;
};

}  // namespace passafe

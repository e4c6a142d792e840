#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "passafe/automata.hpp"
#include "passafe/core_model.hpp"
#include "passafe/errors.hpp"

namespace passafe {

// Explicit-state breadth-first reachability over the composed robot and
// obstacle automata, checking the passive-safety invariant in every
// reachable state. Ticks are not part of the state identity; the delayed
// observation (prev_obstacles) is.

enum class Outcome { Holds, Violated, BudgetExceeded };

std::string_view to_string(Outcome outcome);

struct TraceStep {
  TransitionLabel label;
  std::uint64_t state_hash = 0;  // state_hash() of the state this step reaches

  bool operator==(const TraceStep&) const = default;
};

struct Trace {
  WorldState initial;
  std::vector<TraceStep> steps;

  bool operator==(const Trace&) const = default;
};

struct SafetyVerdict {
  Outcome outcome = Outcome::Holds;
  std::size_t states_explored = 0;
  int max_depth = 0;
  std::optional<Trace> counterexample;  // present iff outcome == Violated
};

struct CheckOptions {
  std::optional<int> depth_bound;  // explore to fixpoint when absent
  std::size_t state_budget = 5'000'000;
};

SafetyVerdict check_safety(const GridScenario& scenario, const CheckOptions& options = {});

struct StateSpaceStats {
  std::size_t states = 0;
  std::size_t transitions = 0;  // distinct successor edges, self-loops excluded
  std::size_t peak_frontier = 0;
  std::size_t max_branching = 0;  // most distinct successors of one state
  int max_depth = 0;
  double wall_seconds = 0.0;
};

class StateBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Same exploration as check_safety without evaluating the property.
/// Throws StateBudgetExceeded past the budget.
StateSpaceStats state_space_stats(const GridScenario& scenario, const CheckOptions& options = {});

class ReplayError : public InputError {
 public:
  ReplayError(std::size_t step, const std::string& message);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Re-executes the trace from its initial state and returns the final state.
/// Throws ReplayError naming the first step whose label is not a legal
/// transition or whose recorded state hash does not match.
WorldState replay_trace(const GridScenario& scenario, const Trace& trace);

/// Stable 64-bit digest of every field except the tick.
std::uint64_t state_hash(const WorldState& world);

/// Visited-set key: the fields that vary between states of one scenario
/// (robot, obstacle positions and static flags, delayed view), packed.
std::string canonical_key(const WorldState& world);

struct RolloutResult {
  std::optional<int> violation_depth;  // tick of the first unsafe state
  int steps = 0;
};

/// Random obstacle policy: each tick, one choice vector drawn uniformly.
/// Stops at the first unsafe state, at a fixpoint, or after max_depth ticks.
RolloutResult random_rollout(const GridScenario& scenario, std::uint64_t seed, int max_depth);

}  // namespace passafe

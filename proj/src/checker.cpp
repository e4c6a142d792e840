#include "passafe/checker.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <unordered_map>

#include "passafe/kinematics.hpp"

namespace passafe {

namespace {

constexpr std::uint32_t kNoParent = UINT32_MAX;

struct Node {
  std::uint32_t parent = kNoParent;
  std::uint32_t choice_index = 0;
};

struct Exploration {
  Outcome outcome = Outcome::Holds;
  std::vector<Node> nodes;
  std::optional<std::uint32_t> violating_node;
  StateSpaceStats stats;
};

void put_i16(std::string& out, int value) {
  const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(value));
  out.push_back(static_cast<char>(u & 0xff));
  out.push_back(static_cast<char>(u >> 8));
}

// Breadth-first, level by level. Frontier order is discovery order and
// successors are generated in lexicographic choice order, so the first
// violating state discovered ends the lexicographically least among the
// shortest counterexamples.
Exploration explore(const GridScenario& scenario, const CheckOptions& options, bool check_property) {
  const auto started = std::chrono::steady_clock::now();
  Exploration ex;

  std::unordered_map<std::string, std::uint32_t> visited;
  const WorldState initial = initial_world_state(scenario);
  visited.emplace(canonical_key(initial), 0);
  ex.nodes.push_back(Node{});

  auto finish = [&](Outcome outcome) {
    ex.outcome = outcome;
    ex.stats.states = ex.nodes.size();
    ex.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return ex;
  };

  if (check_property && !is_passive_safe(initial)) {
    ex.violating_node = 0;
    return finish(Outcome::Violated);
  }

  std::vector<std::pair<WorldState, std::uint32_t>> frontier{{initial, 0}};
  std::vector<std::pair<WorldState, std::uint32_t>> next_frontier;
  std::vector<std::uint32_t> successor_ids;
  int depth = 0;

  while (!frontier.empty()) {
    ex.stats.peak_frontier = std::max(ex.stats.peak_frontier, frontier.size());
    if (options.depth_bound && depth >= *options.depth_bound) break;
    next_frontier.clear();

    for (const auto& [state, id] : frontier) {
      const auto choices = enumerate_obstacle_choices(state);
      successor_ids.clear();
      for (std::uint32_t ci = 0; ci < choices.size(); ++ci) {
        WorldState succ = world_step(state, choices[ci], scenario);
        auto [it, inserted] =
            visited.try_emplace(canonical_key(succ), static_cast<std::uint32_t>(ex.nodes.size()));
        const std::uint32_t succ_id = it->second;
        if (succ_id != id) successor_ids.push_back(succ_id);
        if (!inserted) continue;

        ex.nodes.push_back(Node{id, ci});
        ex.stats.max_depth = depth + 1;
        if (check_property && !is_passive_safe(succ)) {
          ex.violating_node = succ_id;
          ex.stats.transitions += successor_ids.size();
          return finish(Outcome::Violated);
        }
        if (ex.nodes.size() > options.state_budget) return finish(Outcome::BudgetExceeded);
        next_frontier.emplace_back(std::move(succ), succ_id);
      }
      std::sort(successor_ids.begin(), successor_ids.end());
      successor_ids.erase(std::unique(successor_ids.begin(), successor_ids.end()),
                          successor_ids.end());
      ex.stats.transitions += successor_ids.size();
      ex.stats.max_branching = std::max(ex.stats.max_branching, successor_ids.size());
    }
    frontier.swap(next_frontier);
    ++depth;
  }
  return finish(Outcome::Holds);
}

Trace rebuild_trace(const GridScenario& scenario, const Exploration& ex, std::uint32_t target) {
  std::vector<std::uint32_t> choice_path;
  for (std::uint32_t n = target; ex.nodes[n].parent != kNoParent; n = ex.nodes[n].parent) {
    choice_path.push_back(ex.nodes[n].choice_index);
  }
  std::reverse(choice_path.begin(), choice_path.end());

  Trace trace;
  trace.initial = initial_world_state(scenario);
  WorldState cur = trace.initial;
  for (std::uint32_t ci : choice_path) {
    const auto choices = enumerate_obstacle_choices(cur);
    WorldState next = world_step(cur, choices.at(ci), scenario);
    trace.steps.push_back(TraceStep{
        TransitionLabel{cur.tick, cur.robot.mode, next.robot.mode, choices[ci]}, state_hash(next)});
    cur = std::move(next);
  }
  return trace;
}

}  // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Holds: return "Holds";
    case Outcome::Violated: return "Violated";
    case Outcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

SafetyVerdict check_safety(const GridScenario& scenario, const CheckOptions& options) {
  validate_scenario(scenario);
  const Exploration ex = explore(scenario, options, true);
  SafetyVerdict verdict;
  verdict.outcome = ex.outcome;
  verdict.states_explored = ex.stats.states;
  verdict.max_depth = ex.stats.max_depth;
  if (ex.outcome == Outcome::Violated) {
    verdict.counterexample = rebuild_trace(scenario, ex, *ex.violating_node);
  }
  return verdict;
}

StateSpaceStats state_space_stats(const GridScenario& scenario, const CheckOptions& options) {
  validate_scenario(scenario);
  const Exploration ex = explore(scenario, options, false);
  if (ex.outcome == Outcome::BudgetExceeded) {
    throw StateBudgetExceeded("state budget of " + std::to_string(options.state_budget) +
                              " states exceeded");
  }
  return ex.stats;
}

ReplayError::ReplayError(std::size_t step, const std::string& message)
    : InputError("trace step " + std::to_string(step) + ": " + message), step_(step) {}

WorldState replay_trace(const GridScenario& scenario, const Trace& trace) {
  WorldState cur = trace.initial;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& step = trace.steps[k];
    if (step.label.tick != cur.tick)
      throw ReplayError(k, "label tick " + std::to_string(step.label.tick) + " but state tick " +
                               std::to_string(cur.tick));
    if (step.label.mode_before != cur.robot.mode)
      throw ReplayError(k, "robot mode before step is " + std::string(to_string(cur.robot.mode)) +
                               ", label says " + std::string(to_string(step.label.mode_before)));
    WorldState next;
    try {
      next = world_step(cur, step.label.choices, scenario);
    } catch (const InvalidChoiceError& e) {
      throw ReplayError(k, e.what());
    }
    if (step.label.mode_after != next.robot.mode)
      throw ReplayError(k, "robot mode after step is " + std::string(to_string(next.robot.mode)) +
                               ", label says " + std::string(to_string(step.label.mode_after)));
    if (state_hash(next) != step.state_hash) throw ReplayError(k, "state hash mismatch");
    cur = std::move(next);
  }
  return cur;
}

std::uint64_t state_hash(const WorldState& w) {
  // FNV-1a over little-endian 32-bit fields.
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](int value) {
    auto u = static_cast<std::uint32_t>(value);
    for (int i = 0; i < 4; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  auto mix_obstacles = [&](const std::vector<ObstacleSnapshot>& list) {
    mix(static_cast<int>(list.size()));
    for (const auto& o : list) {
      mix(o.id);
      mix(o.x);
      mix(o.lane);
      mix(o.is_static ? 1 : 0);
      mix(o.dest_cell);
      mix(o.max_vel);
    }
  };
  mix(w.robot.x);
  mix(w.robot.lane);
  mix(w.robot.v);
  mix(static_cast<int>(w.robot.mode));
  mix_obstacles(w.obstacles);
  mix_obstacles(w.prev_obstacles);
  return h;
}

std::string canonical_key(const WorldState& w) {
  std::string key;
  key.reserve(8 + 4 * (w.obstacles.size() + w.prev_obstacles.size()));
  put_i16(key, w.robot.x);
  put_i16(key, w.robot.lane);
  put_i16(key, w.robot.v);
  put_i16(key, static_cast<int>(w.robot.mode));
  for (const auto* list : {&w.obstacles, &w.prev_obstacles}) {
    for (const auto& o : *list) {
      put_i16(key, o.x);
      put_i16(key, o.is_static ? 1 : 0);
    }
  }
  return key;
}

RolloutResult random_rollout(const GridScenario& scenario, std::uint64_t seed, int max_depth) {
  std::mt19937_64 rng(seed);
  RolloutResult result;
  WorldState cur = initial_world_state(scenario);
  if (!is_passive_safe(cur)) {
    result.violation_depth = 0;
    return result;
  }
  for (int step = 0; step < max_depth; ++step) {
    const auto choices = enumerate_obstacle_choices(cur);
    // Modulo bias is irrelevant for a handful of choices.
    const auto pick = static_cast<std::size_t>(rng() % choices.size());
    WorldState next = world_step(cur, choices[pick], scenario);
    result.steps = step + 1;
    if (!is_passive_safe(next)) {
      result.violation_depth = next.tick;
      return result;
    }
    if (canonical_key(next) == canonical_key(cur)) break;
    cur = std::move(next);
  }
  return result;
}

}  // namespace passafe

#include <doctest.h>

#include <map>
#include <optional>
#include <random>

#include "passafe/checker.hpp"
#include "passafe/kinematics.hpp"
#include "passafe/trace_io.hpp"
#include "support.hpp"

using namespace passafe;

namespace {

// One lane, one head-on mover; small enough to enumerate every choice sequence.
GridScenario head_on(int assumed, int obstacle_max_vel, int buffer = 1) {
  GridScenario s = testing::empty_scenario(16, 1, 2);
  s.robot_dest_cell = 14;
  s.obstacles = {ObstacleSpec{0, 15, 0, false, 0, obstacle_max_vel}};
  s.assumptions = GridAssumptions{assumed, 12, buffer};
  return s;
}

// Shortest violating choice sequence by exhaustive depth-first search over
// all sequences of length <= limit; ties broken lexicographically.
struct BruteForce {
  const GridScenario& scenario;
  std::optional<std::vector<ChoiceVector>> best;
  std::vector<ChoiceVector> path;

  void search(const WorldState& w, int remaining) {
    if (best && path.size() >= best->size()) return;
    if (!is_passive_safe(w)) {
      best = path;
      return;
    }
    if (remaining == 0) return;
    for (const auto& c : enumerate_obstacle_choices(w)) {
      path.push_back(c);
      search(world_step(w, c, scenario), remaining - 1);
      path.pop_back();
    }
  }
};

std::optional<std::vector<ChoiceVector>> brute_force_shortest(const GridScenario& s, int limit) {
  // Iterative deepening keeps the first hit both shortest and lexicographically least.
  for (int d = 0; d <= limit; ++d) {
    BruteForce bf{s, std::nullopt, {}};
    bf.search(initial_world_state(s), d);
    if (bf.best) return bf.best;
  }
  return std::nullopt;
}

std::vector<ChoiceVector> choices_of(const Trace& t) {
  std::vector<ChoiceVector> out;
  for (const auto& step : t.steps) out.push_back(step.label.choices);
  return out;
}

void expect_replays_to_violation(const GridScenario& s, const SafetyVerdict& v) {
  REQUIRE(v.outcome == Outcome::Violated);
  REQUIRE(v.counterexample.has_value());
  const WorldState end = replay_trace(s, *v.counterexample);
  CHECK_FALSE(is_passive_safe(end));
  CHECK(end.robot.v > 0);
}

}  // namespace

TEST_CASE("no obstacles: holds within the state bound on a path") {
  const GridScenario s = testing::empty_scenario(50, 3, 3);
  const SafetyVerdict v = check_safety(s);
  CHECK(v.outcome == Outcome::Holds);
  CHECK_FALSE(v.counterexample.has_value());
  CHECK(v.states_explored <= static_cast<std::size_t>(50 * 4 * kRobotModeCount));

  const StateSpaceStats stats = state_space_stats(s);
  CHECK(stats.states == v.states_explored);
  CHECK(stats.transitions == stats.states - 1);
  CHECK(stats.max_branching == 1);
}

TEST_CASE("case study: correct assumption holds, under-assumption is violated") {
  const GridScenario holds = case_study_scenario(3, 3);
  const SafetyVerdict h = check_safety(holds);
  CHECK(h.outcome == Outcome::Holds);
  CHECK_FALSE(h.counterexample.has_value());
  CHECK(h.states_explored < 5'000'000);

  const GridScenario violated = case_study_scenario(2, 3);
  const SafetyVerdict v = check_safety(violated);
  expect_replays_to_violation(violated, v);
  CHECK(v.counterexample->steps.size() == static_cast<std::size_t>(v.max_depth));
}

TEST_CASE("every violated verdict replays to a violation") {
  std::mt19937_64 rng(99);
  int violated = 0;
  for (int i = 0; i < 150; ++i) {
    const GridScenario s = testing::random_scenario(rng, 2);
    CheckOptions options;
    options.state_budget = 200'000;
    const SafetyVerdict v = check_safety(s, options);
    CHECK((v.outcome == Outcome::Violated) == v.counterexample.has_value());
    if (v.outcome != Outcome::Violated) continue;
    ++violated;
    expect_replays_to_violation(s, v);
  }
  CHECK(violated > 0);
}

TEST_CASE("counterexamples are shortest and lexicographically least") {
  int compared = 0;
  for (int assumed = 1; assumed <= 3; ++assumed) {
    for (int max_vel = 1; max_vel <= 3; ++max_vel) {
      const GridScenario s = head_on(assumed, max_vel);
      const SafetyVerdict v = check_safety(s);
      if (v.outcome == Outcome::Violated) {
        const int d = static_cast<int>(v.counterexample->steps.size());
        const auto brute = brute_force_shortest(s, d + 2);
        REQUIRE(brute.has_value());
        CHECK(static_cast<int>(brute->size()) == d);
        CHECK(*brute == choices_of(*v.counterexample));
        ++compared;
      } else {
        CHECK_FALSE(brute_force_shortest(s, 14).has_value());
      }
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("replay") {
  const GridScenario s = case_study_scenario(2, 3);
  const SafetyVerdict v = check_safety(s);
  REQUIRE(v.counterexample.has_value());
  const Trace& good = *v.counterexample;

  SUBCASE("empty trace returns the initial state") {
    CHECK(replay_trace(s, Trace{initial_world_state(s), {}}) == initial_world_state(s));
  }
  SUBCASE("corrupted choice names the step") {
    Trace bad = good;
    const std::size_t k = bad.steps.size() / 2;
    REQUIRE_FALSE(bad.steps[k].label.choices.empty());
    bad.steps[k].label.choices[0].velocity = 9;
    try {
      replay_trace(s, bad);
      FAIL("expected ReplayError");
    } catch (const ReplayError& e) {
      CHECK(e.step() == k);
      CHECK(std::string(e.what()).find("step " + std::to_string(k)) != std::string::npos);
    }
  }
  SUBCASE("corrupted mode and hash are caught") {
    Trace bad = good;
    bad.steps[0].label.mode_after = RobotMode::Drive;
    CHECK_THROWS_AS(replay_trace(s, bad), ReplayError);
    bad = good;
    bad.steps.back().state_hash ^= 1;
    try {
      replay_trace(s, bad);
      FAIL("expected ReplayError");
    } catch (const ReplayError& e) {
      CHECK(e.step() == bad.steps.size() - 1);
    }
  }
  SUBCASE("a different but legal choice still fails the hash check") {
    Trace bad = good;
    auto& c = bad.steps[0].label.choices[0];
    c.velocity = c.velocity == 1 ? 2 : 1;
    CHECK_THROWS_AS(replay_trace(s, bad), ReplayError);
  }
}

TEST_CASE("JSONL trace round trip") {
  const GridScenario s = case_study_scenario(1, 3);
  const SafetyVerdict v = check_safety(s);
  REQUIRE(v.counterexample.has_value());
  const std::string text = trace_to_jsonl(s, *v.counterexample);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) ==
        v.counterexample->steps.size());
  const Trace back = trace_from_jsonl(s, text);
  CHECK(back == *v.counterexample);
  CHECK(trace_to_jsonl(s, back) == text);

  std::string broken = text;
  broken.insert(text.find('\n') + 1, "{\"tick\": \"one\"}\n");
  try {
    trace_from_jsonl(s, broken);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("statistics") {
  SUBCASE("one mover with maxVel 2 branches at most twice") {
    const StateSpaceStats stats = state_space_stats(head_on(2, 2));
    CHECK(stats.max_branching <= 2);
    CHECK(stats.states > 1);
  }
  SUBCASE("equal scenarios give equal results") {
    const GridScenario s = case_study_scenario(3, 3);
    const StateSpaceStats a = state_space_stats(s);
    const StateSpaceStats b = state_space_stats(s);
    CHECK(a.states == b.states);
    CHECK(a.transitions == b.transitions);
    CHECK(a.peak_frontier == b.peak_frontier);
    CHECK(a.max_branching == b.max_branching);
    CHECK(a.max_depth == b.max_depth);
    CHECK(a.states == check_safety(s).states_explored);

    const SafetyVerdict v1 = check_safety(case_study_scenario(2, 3));
    const SafetyVerdict v2 = check_safety(case_study_scenario(2, 3));
    CHECK(v1.states_explored == v2.states_explored);
    CHECK(*v1.counterexample == *v2.counterexample);
  }
  SUBCASE("budget") {
    CheckOptions tiny;
    tiny.state_budget = 10;
    CHECK(check_safety(case_study_scenario(3, 3), tiny).outcome == Outcome::BudgetExceeded);
    CHECK_THROWS_AS(state_space_stats(case_study_scenario(3, 3), tiny), StateBudgetExceeded);
  }
  SUBCASE("depth bound") {
    const GridScenario s = case_study_scenario(2, 3);
    const int d = static_cast<int>(check_safety(s).counterexample->steps.size());
    CheckOptions shallow;
    shallow.depth_bound = d - 1;
    const SafetyVerdict v = check_safety(s, shallow);
    CHECK(v.outcome == Outcome::Holds);
    CHECK(v.max_depth <= d - 1);
    shallow.depth_bound = d;
    CHECK(check_safety(s, shallow).outcome == Outcome::Violated);
  }
}

TEST_CASE("property: canonical key identifies states up to the tick") {
  std::mt19937_64 rng(5);
  for (int episode = 0; episode < 60; ++episode) {
    const GridScenario s = testing::random_scenario(rng, 3);
    std::map<std::string, WorldState> seen;
    WorldState w = initial_world_state(s);
    for (int t = 0; t < 40; ++t) {
      WorldState untimed = w;
      untimed.tick = 0;
      const std::string key = canonical_key(w);
      auto [it, inserted] = seen.emplace(key, untimed);
      if (!inserted) CHECK(it->second == untimed);
      for (const auto& [k, other] : seen) {
        if (k != key) CHECK(state_hash(other) != state_hash(untimed));
      }
      WorldState later = w;
      later.tick += 17;
      CHECK(canonical_key(later) == key);
      CHECK(state_hash(later) == state_hash(w));
      w = world_step(w, testing::random_choice(w, rng), s);
    }
  }
}

TEST_CASE("property: sampled rollouts never violate a Holds verdict") {
  const GridScenario s = case_study_scenario(3, 3);
  REQUIRE(check_safety(s).outcome == Outcome::Holds);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CHECK_FALSE(random_rollout(s, seed, 200).violation_depth.has_value());
  }
  const GridScenario u = case_study_scenario(1, 3);
  const int d = static_cast<int>(check_safety(u).counterexample->steps.size());
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = random_rollout(u, seed, 200);
    if (r.violation_depth) {
      found = true;
      CHECK(*r.violation_depth >= d);
    }
  }
  CHECK(found);
}

TEST_CASE("property: raising the assumption never turns Holds into Violated") {
  for (int true_vel = 1; true_vel <= 3; ++true_vel) {
    bool held = false;
    for (int assumed = 1; assumed <= 5; ++assumed) {
      const bool holds = check_safety(case_study_scenario(assumed, true_vel)).outcome == Outcome::Holds;
      if (held) CHECK(holds);
      held = held || holds;
    }
    CHECK(held);
  }
}

TEST_CASE("verdict summary JSON") {
  const auto j = verdict_to_json(check_safety(case_study_scenario(2, 3)));
  CHECK(j.at("outcome") == "Violated");
  CHECK(j.at("counterexampleLength").get<int>() > 0);
  const auto h = verdict_to_json(check_safety(case_study_scenario(3, 3)));
  CHECK(h.at("outcome") == "Holds");
  CHECK(h.at("counterexampleLength").is_null());
}

#include <doctest.h>

#include <sstream>

#include "passafe/checker.hpp"
#include "passafe/cli.hpp"
#include "passafe/scenario_io.hpp"
#include "passafe/sim_io.hpp"
#include "passafe/sweep.hpp"
#include "support.hpp"

using namespace passafe;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.obstacle_vel_grid = {0.15, 0.3};
  spec.reaction_radius_grid = {0.3, 0.8, 1.5};
  spec.runs_per_cell = 6;
  spec.seed_base = 40;
  return spec;
}

std::string sweep_json(const SweepSpec& spec) {
  nlohmann::json j = {{"base", sim_config_to_json(spec.base)},
                      {"obstacleVelGrid", spec.obstacle_vel_grid},
                      {"reactionRadiusGrid", spec.reaction_radius_grid},
                      {"runsPerCell", spec.runs_per_cell},
                      {"seedBase", spec.seed_base}};
  return j.dump(2);
}

}  // namespace

TEST_CASE("sweep seeds and cells") {
  const SweepSpec spec = small_spec();
  CHECK(cell_config(spec, 0, 0, 0).seed == 40);
  CHECK(cell_config(spec, 0, 1, 2).seed == 40 + 1 * 6 + 2);
  CHECK(cell_config(spec, 1, 2, 5).seed == 40 + 5 * 6 + 5);
  CHECK(cell_config(spec, 1, 2, 5).obstacle_true_max_vel == 0.3);
  CHECK(cell_config(spec, 1, 2, 5).reaction_radius == 1.5);

  const SweepResult r = run_sweep(spec, 1);
  REQUIRE(r.cells.size() == 6);
  for (const auto& c : r.cells) {
    CHECK(c.runs == 6);
    CHECK(c.active_collisions <= c.runs);
    CHECK(c.active_collisions + c.reached_goal + c.stopped_safe + c.budget_exhausted == c.runs);
  }
  CHECK(r.cells[0].obstacle_vel == 0.15);
  CHECK(r.cells[0].reaction_radius == 0.3);
  CHECK(r.cells[5].obstacle_vel == 0.3);
  CHECK(r.cells[5].reaction_radius == 1.5);
}

TEST_CASE("sweep CSV is independent of the thread count") {
  const SweepSpec spec = small_spec();
  const std::string one = sweep_csv(run_sweep(spec, 1));
  CHECK(one.rfind("obstacle_vel_mps,reaction_radius_m,runs,active_collisions,reached_goal,stopped_safe\n", 0) == 0);
  CHECK(one.find('\r') == std::string::npos);
  CHECK(sweep_csv(run_sweep(spec, 3)) == one);
  CHECK(sweep_csv(run_sweep(spec, 8)) == one);
  CHECK(sweep_csv(run_sweep(spec, 0)) == one);
}

TEST_CASE("sweep examples") {
  SweepSpec spec;
  spec.obstacle_vel_grid = {0.15};
  spec.reaction_radius_grid = {1.5};
  spec.runs_per_cell = 20;
  CHECK(run_sweep(spec).cells[0].active_collisions == 0);

  spec.obstacle_vel_grid = {0.15, 0.2, 0.25, 0.3};
  for (const auto& c : run_sweep(spec).cells) CHECK(c.active_collisions == 0);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec = small_spec();
  spec.runs_per_cell = 0;
  CHECK_THROWS_AS(validate_sweep_spec(spec), InputError);
  spec = small_spec();
  spec.obstacle_vel_grid.clear();
  CHECK_THROWS_AS(validate_sweep_spec(spec), InputError);
  spec = small_spec();
  spec.reaction_radius_grid.push_back(9.0);  // beyond the visual range
  CHECK_THROWS_AS(validate_sweep_spec(spec), InputError);

  const SweepSpec back = load_sweep_spec(sweep_json(small_spec()));
  CHECK(back.obstacle_vel_grid == small_spec().obstacle_vel_grid);
  CHECK(back.reaction_radius_grid == small_spec().reaction_radius_grid);
  CHECK(back.runs_per_cell == 6);
  CHECK(back.seed_base == 40);
  CHECK_THROWS_AS(load_sweep_spec(R"({"obstacleVelGrid": [0.1], "reactionRadiusGrid": [1], "runs": 3})"),
                  InputError);
}

TEST_CASE("default evaluation sweep grid") {
  const SweepSpec spec = default_evaluation_sweep(30);
  CHECK(spec.base.assumed_obstacle_max_vel == 0.2);
  CHECK(spec.obstacle_vel_grid == std::vector<double>{0.15, 0.2, 0.25, 0.3});
  REQUIRE(spec.reaction_radius_grid.size() == 6);
  CHECK(spec.reaction_radius_grid.back() == derived_reaction_threshold(spec.base));
  CHECK(std::is_sorted(spec.reaction_radius_grid.begin(), spec.reaction_radius_grid.end()));
  CHECK(spec.runs_per_cell == 30);
}

TEST_CASE("CLI exit codes") {
  testing::TempDir dir;
  const std::string empty = dir.file("empty.json");
  testing::write_file(empty, serialize_scenario(testing::empty_scenario(50, 3, 3)));
  const std::string holds = dir.file("holds.json");
  testing::write_file(holds, serialize_scenario(case_study_scenario(3, 3)));
  const std::string violated = dir.file("violated.json");
  testing::write_file(violated, serialize_scenario(case_study_scenario(2, 3)));

  SUBCASE("check") {
    CliRun r = cli({"check", empty});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("outcome") == "Holds");
    CHECK(cli({"check", holds}).code == 0);

    const std::string cex = dir.file("cex.jsonl");
    r = cli({"check", violated, "--cex", cex});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out).at("counterexampleFile") == cex);
    r = cli({"replay", violated, cex});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("finalPassiveSafe") == false);

    // Default counterexample location next to the scenario.
    CHECK(cli({"check", violated}).code == 2);
    CHECK(testing::read_file(violated + ".cex.jsonl") == testing::read_file(cex));

    // The same trace does not replay against another scenario.
    CHECK(cli({"replay", holds, cex}).code == 1);

    CHECK(cli({"check", holds, "--budget", "10"}).code == 3);
    CHECK(cli({"check", violated, "--depth", "2"}).code == 0);
  }
  SUBCASE("usage and file errors") {
    CHECK(cli({}).code == 64);
    CHECK(cli({"frobnicate"}).code == 64);
    CHECK(cli({"check"}).code == 64);
    CHECK(cli({"check", empty, "--budget", "lots"}).code == 64);
    CHECK(cli({"check", dir.file("missing.json")}).code == 66);
    CHECK(cli({"--help"}).code == 0);

    const std::string bad = dir.file("bad.json");
    testing::write_file(bad, "{\"trackLengthCells\": 10,");
    const CliRun r = cli({"check", bad});
    CHECK(r.code == 65);
    CHECK(r.err.find("parse error") != std::string::npos);
  }
  SUBCASE("simulate") {
    const std::string config = dir.file("sim.json");
    testing::write_file(config, sim_config_to_json(SimConfig{}).dump(2));
    const std::string trace_a = dir.file("a.jsonl");
    const std::string trace_b = dir.file("b.jsonl");
    CliRun r = cli({"simulate", config, "--seed", "7", "--trace", trace_a});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("seed") == 7);
    CHECK(cli({"simulate", config, "--seed", "7", "--trace", trace_b}).out == r.out);
    CHECK(testing::read_file(trace_a) == testing::read_file(trace_b));
    CHECK_FALSE(testing::read_file(trace_a).empty());

    SimConfig fast;
    fast.obstacle_true_max_vel = 0.3;
    fast.reaction_radius = 0.2;
    testing::write_file(config, sim_config_to_json(fast).dump(2));
    int violations = 0;
    for (int seed = 0; seed < 10; ++seed) {
      const int code = cli({"simulate", config, "--seed", std::to_string(seed)}).code;
      CHECK((code == 0 || code == 2));
      violations += code == 2;
    }
    CHECK(violations > 0);

    SimConfig slow;
    slow.max_ticks = 5;
    testing::write_file(config, sim_config_to_json(slow).dump(2));
    CHECK(cli({"simulate", config}).code == 3);
  }
  SUBCASE("sweep") {
    const std::string spec = dir.file("spec.json");
    testing::write_file(spec, sweep_json(small_spec()));
    const std::string a = dir.file("a.csv");
    const std::string b = dir.file("b.csv");
    CHECK(cli({"sweep", spec, "--out", a, "--jobs", "1"}).code == 0);
    CHECK(cli({"sweep", spec, "--out", b, "--jobs", "4"}).code == 0);
    CHECK(testing::read_file(a) == testing::read_file(b));
    CHECK(testing::read_file(a) == sweep_csv(run_sweep(small_spec(), 1)));
    CHECK(cli({"sweep", spec}).code == 64);
  }
}

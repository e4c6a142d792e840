#include "passafe/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "json_fields.hpp"
#include "passafe/checker.hpp"
#include "passafe/kinematics.hpp"
#include "passafe/scenario_io.hpp"
#include "passafe/sim_io.hpp"
#include "passafe/sweep.hpp"
#include "passafe/trace_io.hpp"

namespace passafe {

namespace {

struct CheckArgs {
  std::string scenario;
  std::optional<int> depth;
  std::size_t budget = CheckOptions{}.state_budget;
  std::string cex;
};

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string trace;
};

struct SweepArgs {
  std::string spec;
  std::string out;
  unsigned jobs = 0;
};

struct ReplayArgs {
  std::string scenario;
  std::string trace;
};

int do_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const GridScenario scenario = load_scenario_file(a.scenario);
  CheckOptions options;
  options.depth_bound = a.depth;
  options.state_budget = a.budget;
  const SafetyVerdict verdict = check_safety(scenario, options);

  nlohmann::json summary = verdict_to_json(verdict);
  if (verdict.counterexample) {
    const std::string path = a.cex.empty() ? a.scenario + ".cex.jsonl" : a.cex;
    detail::write_text_file(path, trace_to_jsonl(scenario, *verdict.counterexample));
    summary["counterexampleFile"] = path;
  }
  out << summary.dump() << '\n';

  switch (verdict.outcome) {
    case Outcome::Holds: return exit_code::kOk;
    case Outcome::Violated: return exit_code::kViolation;
    case Outcome::BudgetExceeded:
      err << "state budget exhausted before a verdict was reached\n";
      return exit_code::kInconclusive;
  }
  return exit_code::kInconclusive;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  SimConfig config = load_sim_config(detail::read_text_file(a.config));
  if (a.seed) config.seed = *a.seed;
  SimOptions options;
  options.record_states = !a.trace.empty();
  const SimTrace trace = simulate(config, options);
  if (!a.trace.empty()) detail::write_text_file(a.trace, sim_trace_to_jsonl(trace));
  out << sim_outcome_json(trace).dump() << '\n';

  switch (trace.outcome) {
    case SimOutcome::ReachedGoal:
    case SimOutcome::StoppedSafe: return exit_code::kOk;
    case SimOutcome::ActiveCollision: return exit_code::kViolation;
    case SimOutcome::TickBudgetExhausted: return exit_code::kInconclusive;
  }
  return exit_code::kInconclusive;
}

int do_sweep(const SweepArgs& a, std::ostream& out) {
  const SweepSpec spec = load_sweep_spec(detail::read_text_file(a.spec));
  const SweepResult result = run_sweep(spec, a.jobs);
  detail::write_text_file(a.out, sweep_csv(result));
  int collisions = 0;
  for (const auto& c : result.cells) collisions += c.active_collisions;
  out << nlohmann::json{{"cells", result.cells.size()},
                        {"activeCollisions", collisions},
                        {"csv", a.out}}
             .dump()
      << '\n';
  return exit_code::kOk;
}

int do_replay(const ReplayArgs& a, std::ostream& out, std::ostream& err) {
  const GridScenario scenario = load_scenario_file(a.scenario);
  const Trace trace = trace_from_jsonl(scenario, detail::read_text_file(a.trace));
  WorldState final_state;
  try {
    final_state = replay_trace(scenario, trace);
  } catch (const ReplayError& e) {
    out << nlohmann::json{{"replayed", false}, {"failedStep", e.step()}, {"error", e.what()}}.dump()
        << '\n';
    err << e.what() << '\n';
    return exit_code::kRejected;
  }
  const bool safe = is_passive_safe(final_state);
  out << nlohmann::json{{"replayed", true},
                        {"steps", trace.steps.size()},
                        {"finalTick", final_state.tick},
                        {"finalPassiveSafe", safe}}
             .dump()
      << '\n';
  return safe ? exit_code::kRejected : exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Passive-safety workbench: grid model checker, runtime simulator, sweep harness"};
  app.name("passafe");
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Verify passive safety of a grid scenario");
  check->add_option("scenario", check_args.scenario, "Scenario JSON")->required();
  check->add_option("--depth", check_args.depth, "Depth bound in ticks")->check(CLI::NonNegativeNumber);
  check->add_option("--budget", check_args.budget, "State budget")->check(CLI::PositiveNumber);
  check->add_option("--cex", check_args.cex, "Counterexample JSONL path (default <scenario>.cex.jsonl)");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Run one runtime simulation");
  sim->add_option("config", sim_args.config, "Simulation config JSON")->required();
  sim->add_option("--seed", sim_args.seed, "Override the config seed");
  sim->add_option("--trace", sim_args.trace, "Write the JSONL trace here");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run the collision-count sweep");
  sweep->add_option("spec", sweep_args.spec, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_args.out, "CSV output path")->required();
  sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (0 = all cores)");

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Validate a counterexample trace");
  replay->add_option("scenario", replay_args.scenario, "Scenario JSON")->required();
  replay->add_option("trace", replay_args.trace, "Counterexample JSONL")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "Run with --help for usage.\n";
    return exit_code::kUsage;
  }

  try {
    if (check->parsed()) return do_check(check_args, out, err);
    if (sim->parsed()) return do_simulate(sim_args, out);
    if (sweep->parsed()) return do_sweep(sweep_args, out);
    if (replay->parsed()) return do_replay(replay_args, out, err);
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFileError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kDataError;
  }
  return exit_code::kUsage;
}

}  // namespace passafe

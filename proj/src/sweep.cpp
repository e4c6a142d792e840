#include "passafe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json_fields.hpp"
#include "passafe/sim_io.hpp"

namespace passafe {

using nlohmann::json;

void validate_sweep_spec(const SweepSpec& spec) {
  if (spec.obstacle_vel_grid.empty()) throw InputError("sweep: obstacleVelGrid must not be empty");
  if (spec.reaction_radius_grid.empty())
    throw InputError("sweep: reactionRadiusGrid must not be empty");
  if (spec.runs_per_cell < 1) throw InputError("sweep: runsPerCell must be >= 1");
  for (std::size_t v = 0; v < spec.obstacle_vel_grid.size(); ++v) {
    for (std::size_t r = 0; r < spec.reaction_radius_grid.size(); ++r) {
      validate_sim_config(cell_config(spec, v, r, 0));
    }
  }
}

SimConfig cell_config(const SweepSpec& spec, std::size_t vel_index, std::size_t radius_index, int run) {
  SimConfig c = spec.base;
  c.obstacle_true_max_vel = spec.obstacle_vel_grid.at(vel_index);
  c.reaction_radius = spec.reaction_radius_grid.at(radius_index);
  const std::uint64_t cell = vel_index * spec.reaction_radius_grid.size() + radius_index;
  c.seed = spec.seed_base + cell * static_cast<std::uint64_t>(spec.runs_per_cell) +
           static_cast<std::uint64_t>(run);
  return c;
}

namespace {

CellResult run_cell(const SweepSpec& spec, std::size_t vel_index, std::size_t radius_index) {
  CellResult cell;
  cell.obstacle_vel = spec.obstacle_vel_grid[vel_index];
  cell.reaction_radius = spec.reaction_radius_grid[radius_index];
  SimOptions options;
  options.record_states = false;
  for (int run = 0; run < spec.runs_per_cell; ++run) {
    const SimTrace trace = simulate(cell_config(spec, vel_index, radius_index, run), options);
    ++cell.runs;
    switch (trace.outcome) {
      case SimOutcome::ActiveCollision: ++cell.active_collisions; break;
      case SimOutcome::ReachedGoal: ++cell.reached_goal; break;
      case SimOutcome::StoppedSafe: ++cell.stopped_safe; break;
      case SimOutcome::TickBudgetExhausted: ++cell.budget_exhausted; break;
    }
  }
  return cell;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  validate_sweep_spec(spec);
  const std::size_t radii = spec.reaction_radius_grid.size();
  const std::size_t cell_count = spec.obstacle_vel_grid.size() * radii;

  SweepResult result;
  result.cells.resize(cell_count);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cell_count));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cell_count; i = next++) {
      try {
        result.cells[i] = run_cell(spec, i / radii, i % radii);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "obstacle_vel_mps,reaction_radius_m,runs,active_collisions,reached_goal,stopped_safe\n";
  char line[160];
  for (const auto& c : result.cells) {
    std::snprintf(line, sizeof line, "%.6g,%.6g,%d,%d,%d,%d\n", c.obstacle_vel, c.reaction_radius,
                  c.runs, c.active_collisions, c.reached_goal, c.stopped_safe);
    out += line;
  }
  return out;
}

SweepSpec sweep_spec_from_json(const json& j) {
  detail::BasicFieldReader<InputError> r(j, "sweep");
  r.allow_only({"base", "obstacleVelGrid", "reactionRadiusGrid", "runsPerCell", "seedBase"});
  SweepSpec spec;
  if (r.has("base")) spec.base = sim_config_from_json(r.required_object("base"), "sweep.base");

  auto number_list = [&r](const std::string& key) {
    std::vector<double> values;
    const json& arr = r.required_array(key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) r.fail(r.path(key) + "[" + std::to_string(i) + "]", "expected a number");
      values.push_back(arr[i].get<double>());
    }
    return values;
  };
  spec.obstacle_vel_grid = number_list("obstacleVelGrid");
  spec.reaction_radius_grid = number_list("reactionRadiusGrid");
  spec.runs_per_cell = r.optional_int("runsPerCell", spec.runs_per_cell);
  if (r.has("seedBase")) spec.seed_base = r.required_uint64("seedBase");
  validate_sweep_spec(spec);
  return spec;
}

SweepSpec load_sweep_spec(std::string_view source) {
  return sweep_spec_from_json(detail::parse_json_text(source, "sweep"));
}

SweepSpec default_evaluation_sweep(int runs_per_cell, std::uint64_t seed_base) {
  SweepSpec spec;
  spec.base.assumed_obstacle_max_vel = 0.2;
  spec.obstacle_vel_grid = {0.15, 0.2, 0.25, 0.3};
  const double top = derived_reaction_threshold(spec.base);
  const double bottom = 0.45;
  for (int i = 0; i < 5; ++i) {
    spec.reaction_radius_grid.push_back(bottom + (top - bottom) * i / 5.0);
  }
  spec.reaction_radius_grid.push_back(top);
  spec.runs_per_cell = runs_per_cell;
  spec.seed_base = seed_base;
  return spec;
}

}  // namespace passafe

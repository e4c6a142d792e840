#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "passafe/runtime_sim.hpp"

namespace passafe {

/// Grid of obstacle true max velocities x reaction radii, every cell run
/// runs_per_cell times. Run r of cell i (velocity-major order) uses seed
/// seed_base + i * runs_per_cell + r.
struct SweepSpec {
  SimConfig base;
  std::vector<double> obstacle_vel_grid;
  std::vector<double> reaction_radius_grid;
  int runs_per_cell = 10;
  std::uint64_t seed_base = 0;
};

struct CellResult {
  double obstacle_vel = 0.0;
  double reaction_radius = 0.0;
  int runs = 0;
  int active_collisions = 0;  // runs ending in ActiveCollision
  int reached_goal = 0;
  int stopped_safe = 0;
  int budget_exhausted = 0;

  bool operator==(const CellResult&) const = default;
};

struct SweepResult {
  std::vector<CellResult> cells;  // velocity-major, matching the spec grids
};

/// Throws InputError for empty grids, runs_per_cell < 1, or a cell whose
/// config is invalid.
void validate_sweep_spec(const SweepSpec& spec);

/// The config of one cell/run, as run_sweep would simulate it.
SimConfig cell_config(const SweepSpec& spec, std::size_t vel_index, std::size_t radius_index, int run);

/// Cells are distributed over `threads` workers (0 = hardware concurrency);
/// the result does not depend on the thread count.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Header obstacle_vel_mps,reaction_radius_m,runs,active_collisions,
/// reached_goal,stopped_safe; LF line endings.
std::string sweep_csv(const SweepResult& result);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(std::string_view source);

/// Evaluation grid: assumption 0.2 m/s, obstacle bounds 0.15..0.3 m/s and
/// six reaction radii ending at the derived threshold.
SweepSpec default_evaluation_sweep(int runs_per_cell = 10, std::uint64_t seed_base = 0);

}  // namespace passafe

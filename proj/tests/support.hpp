#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "passafe/automata.hpp"
#include "passafe/core_model.hpp"

namespace testing {

// Scratch directory removed when the object goes out of scope.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("passafe_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline passafe::GridScenario empty_scenario(int track = 10, int lanes = 1, int vmax = 3) {
  passafe::GridScenario s;
  s.track_length_cells = track;
  s.lane_count = lanes;
  s.robot_start_cell = 0;
  s.robot_start_lane = 0;
  s.robot_max_vel = vmax;
  s.robot_dest_cell = track - 1;
  return s;
}

// Random valid scenario: up to `max_obstacles` obstacles, mixed static and moving.
inline passafe::GridScenario random_scenario(std::mt19937_64& rng, int max_obstacles = 3) {
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  passafe::GridScenario s;
  s.track_length_cells = pick(5, 40);
  s.lane_count = pick(1, 3);
  s.robot_max_vel = pick(1, 4);
  s.robot_dest_cell = pick(1, s.track_length_cells - 1);
  s.robot_start_cell = pick(0, s.robot_dest_cell - 1);
  s.robot_start_lane = pick(0, s.lane_count - 1);
  s.assumptions.assumed_obstacle_max_vel = pick(1, 4);
  s.assumptions.visual_radius = pick(1, 30);
  s.assumptions.buffer = pick(1, 5);
  const int n = pick(0, max_obstacles);
  for (int i = 0; i < n; ++i) {
    passafe::ObstacleSpec o;
    o.id = i;
    o.lane = pick(0, s.lane_count - 1);
    o.start_cell = pick(0, s.track_length_cells - 1);
    o.is_static = pick(0, 2) == 0;
    o.dest_cell = o.is_static ? o.start_cell : pick(0, o.start_cell);
    o.max_vel = pick(1, 3);
    s.obstacles.push_back(o);
  }
  return s;
}

inline passafe::ChoiceVector random_choice(const passafe::WorldState& w, std::mt19937_64& rng) {
  const auto all = passafe::enumerate_obstacle_choices(w);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

}  // namespace testing

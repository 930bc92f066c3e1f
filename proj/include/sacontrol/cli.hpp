#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sacontrol/simplex_grid.hpp"
#include "sacontrol/stage_reward.hpp"

namespace sacontrol::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitGuard = 3,
  kExitVerifyFailed = 4,
};

inline constexpr std::uint64_t kDefaultSeed = 1;

// An empty scenario path selects the built-in scenario.
struct SolveConfig {
  std::string scenario;
  RewardKind reward = RewardKind::kSmoothingAverse;
  double resolution = 0.01;
  std::size_t cells = 60;
  std::uint64_t max_points = SimplexGrid::kDefaultMaxPoints;
  std::filesystem::path out = "out";
  std::size_t threads = 0;
};

struct RunCloudConfig {
  std::string scenario;
  std::vector<std::filesystem::path> policies;
  std::optional<std::size_t> runs;  // default: scenario n_runs
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out = "out";
  std::size_t threads = 0;
};

struct RunRobotConfig {
  std::string scenario;
  std::optional<double> gamma;  // default: scenario gamma
  std::size_t episodes = 25;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out = "out";
  std::size_t threads = 0;
};

struct VerifyConfig {
  bool corrupt_transition = false;  // negative-control hook
  std::optional<std::filesystem::path> out;
};

struct GridInfoConfig {
  std::size_t n_states = 3;
  double resolution = 0.01;
  std::uint64_t max_points = SimplexGrid::kDefaultMaxPoints;
};

// Each command writes its files plus manifest.json into `out` and a short
// human summary to `log`. Errors propagate as sacontrol exceptions.
void cmd_solve(const SolveConfig& config, std::ostream& log);
void cmd_run_cloud(const RunCloudConfig& config, std::ostream& log);
void cmd_run_robot(const RunRobotConfig& config, std::ostream& log);
// Returns kExitOk or kExitVerifyFailed.
int cmd_verify(const VerifyConfig& config, std::ostream& log);
void cmd_grid_info(const GridInfoConfig& config, std::ostream& log);

// Full command line: parse, dispatch, and map exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// 17 significant digits.
std::string format_double(double value);

}  // namespace sacontrol::cli

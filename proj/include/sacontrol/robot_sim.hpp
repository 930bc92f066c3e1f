#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sacontrol/ekf.hpp"
#include "sacontrol/robot_scenario.hpp"

namespace sacontrol {

// Uniform grid of `count` turn rates over [-pi, pi).
std::vector<double> turn_rate_candidates(std::size_t count);

struct RolloutScores {
  std::vector<double> candidates;
  std::vector<double> scores;  // mean rollout objective per candidate
};

// Average rollout objective for each candidate turn rate. Rollout n samples
// its initial state from `belief` and its noise from
// derive_seed(rollout_seed, n); every candidate sees the same draws. Each of
// the rollout_horizon steps adds
//   h(post) - h(pred) + [include_process_entropy] h(Q) - gamma |mean - goal|^2
// with heading differences wrapped.
RolloutScores score_turn_rates(const GaussianBelief& belief, const RobotScenario& scenario,
                               const std::vector<double>& candidates, std::uint64_t rollout_seed,
                               bool include_process_entropy = true);

// Candidate with the highest score; ties prefer the smallest |u|, then the
// negative rate.
double select_turn_rate(const RolloutScores& scores);

double receding_horizon_control(const GaussianBelief& belief, const RobotScenario& scenario,
                                std::uint64_t rollout_seed);

struct NavigationStep {
  RobotState pose;  // true pose after the step
  double turn_rate;
  GaussianBelief belief;  // after predict + update
  double h_post;
  double h_pred;
  double h_process;
};

struct NavigationRecord {
  std::uint64_t seed = 0;
  RobotState initial_pose;
  GaussianBelief initial_belief;
  std::vector<NavigationStep> steps;
  bool reached_goal = false;

  // Poses x_0..x_n including the initial pose.
  std::vector<RobotState> poses() const;
};

// Closed-loop run: pick a turn rate, move at scenario.speed with process
// noise, measure every landmark, EKF predict + update. Stops once the true
// position is within goal_tolerance of the goal or after max_steps.
NavigationRecord run_navigation(const RobotScenario& scenario, std::uint64_t episode_seed);

struct TrajectoryStats {
  std::vector<Eigen::Vector2d> mean_path;
  std::vector<Eigen::Vector2d> std_path;  // per-axis population std dev
  double mean_min_landmark_distance = 0.0;
  double mean_final_goal_distance = 0.0;
  double goal_reached_fraction = 0.0;
  double mean_steps = 0.0;
};

// Shorter runs are padded by holding their final pose.
TrajectoryStats trajectory_stats(const std::vector<NavigationRecord>& batch, const RobotScenario& scenario);

double min_landmark_distance(const NavigationRecord& record, const RobotScenario& scenario);
double final_goal_distance(const NavigationRecord& record, const RobotScenario& scenario);

// Episode i uses derive_seed(master_seed, i).
std::vector<NavigationRecord> run_navigation_batch(const RobotScenario& scenario, std::size_t episodes,
                                                   std::uint64_t master_seed, std::size_t threads = 0);

}  // namespace sacontrol

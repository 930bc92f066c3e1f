#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "sacontrol/backward_induction.hpp"
#include "sacontrol/controlled_hmm.hpp"
#include "sacontrol/policy_artifact.hpp"
#include "sacontrol/quadrature.hpp"
#include "sacontrol/simplex_grid.hpp"
#include "sacontrol/smoother.hpp"
#include "sacontrol/stage_reward.hpp"

namespace sacontrol {

struct CloudScenario {
  ControlledHmm hmm;
  std::size_t horizon = 10;
  double gamma = 0.0;
  std::size_t n_runs = 200;
  // c(x, u) as an n_states x n_controls table; empty means zero cost.
  Eigen::MatrixXd cost;

  StageCost stage_cost() const;
};

// Three-state privacy example: controls 0, 1, 2 select the three transition
// matrices, Gaussian measurements with means 1, 3, 5 and unit variance,
// uniform prior, T = 10, zero cost.
CloudScenario default_cloud_scenario();

// {model: <hmm document>, horizon, gamma, n_runs, cost?: [[...]]}
nlohmann::json cloud_scenario_to_json(const CloudScenario& scenario);
CloudScenario cloud_scenario_from_json(const nlohmann::json& doc);

RewardFunction make_reward(const CloudScenario& scenario, RewardKind kind, const MeasurementQuadrature& quad);

// Header a policy must carry to be run on this scenario.
PolicyHeader scenario_header(const CloudScenario& scenario, const MeasurementQuadrature& quad,
                             std::uint64_t divisions, RewardKind kind);

// u_t as a function of the information state and t.
using BeliefPolicy = std::function<std::size_t(const Belief&, std::size_t)>;

struct NamedPolicy {
  std::string name;
  BeliefPolicy policy;
};

// Nearest-grid-point lookup into a solved policy.
BeliefPolicy make_grid_policy(std::shared_ptr<const SimplexGrid> grid, std::shared_ptr<const GridPolicy> policy);

struct EpisodeRecord {
  std::uint64_t seed = 0;
  std::vector<std::size_t> states;        // x_0..x_T
  std::vector<std::size_t> controls;      // u_0..u_{T-1}
  std::vector<Observation> observations;  // y_0..y_T
  std::vector<Belief> beliefs;            // pi_0..pi_T
  std::vector<double> stage_rewards;      // h(X_0|y_0), then r_tilde for t = 1..T
  double realised_objective = 0.0;        // sum of stage_rewards
  SmoothedPosteriors smoothed;
  double trajectory_entropy = 0.0;        // h(X^T | y^T, u^{T-1})
  std::size_t map_errors = 0;             // over t = 1..T
  double map_error_rate = 0.0;
};

// Simulates one closed-loop episode. State transitions and measurement noise
// draw from two independent streams derived from `seed`, so episodes that
// share a seed share their random numbers across policies.
EpisodeRecord run_episode(const CloudScenario& scenario, const BeliefPolicy& policy, std::uint64_t seed);

nlohmann::json episode_summary(const EpisodeRecord& record, const std::string& policy_name, std::size_t index);

struct PolicyMetrics {
  std::string policy;
  double mean_entropy_nats = 0.0;
  double map_error = 0.0;
  std::size_t n_runs = 0;
  std::uint64_t seed = 0;
};

struct PolicyEvaluation {
  PolicyMetrics metrics;
  std::vector<EpisodeRecord> episodes;
};

// Episode i of every policy uses derive_seed(master_seed, i).
std::vector<PolicyEvaluation> evaluate_policies(const CloudScenario& scenario, const std::vector<NamedPolicy>& policies,
                                                std::uint64_t master_seed, std::size_t n_runs,
                                                std::size_t threads = 0);

}  // namespace sacontrol

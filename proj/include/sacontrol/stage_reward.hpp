#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "sacontrol/belief.hpp"
#include "sacontrol/controlled_hmm.hpp"
#include "sacontrol/quadrature.hpp"

namespace sacontrol {

// Entropy terms of one filter step, all in nats.
struct StageRewardBreakdown {
  double h_post;   // h(X_t | y^t, u^{t-1})
  double h_pred;   // h(X_t | y^{t-1}, u^{t-1})
  double h_trans;  // h(X_t | X_{t-1}, y^{t-1}, u^{t-1})
  double r_tilde;  // h_post - h_pred + h_trans
};

// c_t(x, u) >= 0
using StageCost = std::function<double(std::size_t state, std::size_t control)>;

enum class RewardKind { kSmoothingAverse, kMinInfoGain };

std::string to_string(RewardKind kind);
RewardKind reward_kind_from_string(const std::string& name);

// Smoother-entropy stage reward for the step (prev, u) -> y.
StageRewardBreakdown stage_reward_tilde(const ControlledHmm& hmm, const Belief& prev, std::size_t u, Observation y);

// E[r_tilde(belief, u, Y) - gamma c(X, u) | belief, u], expectation over the
// quadrature cells (exact for discrete emissions).
double expected_stage_reward(const ControlledHmm& hmm, const Belief& belief, std::size_t u, const StageCost& cost,
                             double gamma, const MeasurementQuadrature& quad);

// Baseline reward: E[h_post - h_pred], i.e. minus the expected information
// gained from the next measurement.
double min_info_gain_stage_reward(const ControlledHmm& hmm, const Belief& belief, std::size_t u,
                                  const MeasurementQuadrature& quad);

// Realised additive objective h(X_0|y_0) + sum_{t=1..T} r_tilde(pi_{t-1}, u_{t-1}, y_t)
// for controls u^{T-1} (size T) and observations y^T (size T + 1).
double additive_objective_realisation(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                      std::span<const Observation> observations);

}  // namespace sacontrol

#include "sacontrol/stage_reward.hpp"

#include "sacontrol/errors.hpp"
#include "sacontrol/hmm_filter.hpp"

namespace sacontrol {

std::string to_string(RewardKind kind) {
  return kind == RewardKind::kSmoothingAverse ? "smoothing-averse" : "min-info-gain";
}

RewardKind reward_kind_from_string(const std::string& name) {
  if (name == "smoothing-averse") return RewardKind::kSmoothingAverse;
  if (name == "min-info-gain") return RewardKind::kMinInfoGain;
  throw ConfigError("unknown reward kind '" + name + "' (expected smoothing-averse or min-info-gain)");
}

StageRewardBreakdown stage_reward_tilde(const ControlledHmm& hmm, const Belief& prev, std::size_t u, Observation y) {
  const JointTable joint = predict_joint(hmm, prev, u);
  const Belief pred = predict_marginal(hmm, prev, u);
  const Belief post = measurement_update(hmm, pred, y);
  StageRewardBreakdown b{};
  b.h_post = discrete_entropy(post);
  b.h_pred = discrete_entropy(pred);
  b.h_trans = conditional_entropy_of_joint(joint, prev);
  b.r_tilde = b.h_post - b.h_pred + b.h_trans;
  return b;
}

double expected_stage_reward(const ControlledHmm& hmm, const Belief& belief, std::size_t u, const StageCost& cost,
                             double gamma, const MeasurementQuadrature& quad) {
  if (gamma < 0.0) throw DomainError("gamma must be nonnegative");
  const double h_pred = discrete_entropy(predict_marginal(hmm, belief, u));
  const double h_trans = conditional_entropy_of_joint(predict_joint(hmm, belief, u), belief);
  double reward = 0.0;
  for (const auto& o : measurement_outcomes(hmm, belief, u, quad)) {
    reward += o.probability * (discrete_entropy(o.posterior) - h_pred + h_trans);
  }
  if (gamma > 0.0 && cost) {
    double expected_cost = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) expected_cost += belief[i] * cost(i, u);
    reward -= gamma * expected_cost;
  }
  return reward;
}

double min_info_gain_stage_reward(const ControlledHmm& hmm, const Belief& belief, std::size_t u,
                                  const MeasurementQuadrature& quad) {
  const double h_pred = discrete_entropy(predict_marginal(hmm, belief, u));
  double reward = 0.0;
  for (const auto& o : measurement_outcomes(hmm, belief, u, quad)) {
    reward += o.probability * (discrete_entropy(o.posterior) - h_pred);
  }
  return reward;
}

double additive_objective_realisation(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                      std::span<const Observation> observations) {
  if (observations.size() != controls.size() + 1) {
    throw DomainError("expected " + std::to_string(controls.size() + 1) + " observations for " +
                      std::to_string(controls.size()) + " controls, got " + std::to_string(observations.size()));
  }
  Belief belief = measurement_update(hmm, hmm.initial(), observations[0]);
  double total = discrete_entropy(belief);
  for (std::size_t t = 1; t < observations.size(); ++t) {
    total += stage_reward_tilde(hmm, belief, controls[t - 1], observations[t]).r_tilde;
    belief = filter_update(hmm, belief, controls[t - 1], observations[t]);
  }
  return total;
}

}  // namespace sacontrol

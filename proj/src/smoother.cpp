#include "sacontrol/smoother.hpp"

#include "sacontrol/errors.hpp"
#include "sacontrol/hmm_filter.hpp"

namespace sacontrol {

SmoothedPosteriors forward_backward_smoother(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                             std::span<const Observation> observations) {
  if (observations.size() != controls.size() + 1) {
    throw DomainError("smoother needs one more observation than controls");
  }
  const std::size_t T = controls.size();
  SmoothedPosteriors out;
  out.filtered.reserve(T + 1);
  std::vector<Belief> predicted;
  predicted.reserve(T);

  out.filtered.push_back(measurement_update(hmm, hmm.initial(), observations[0]));
  for (std::size_t t = 1; t <= T; ++t) {
    predicted.push_back(predict_marginal(hmm, out.filtered.back(), controls[t - 1]));
    out.filtered.push_back(measurement_update(hmm, predicted.back(), observations[t]));
  }

  std::vector<Belief> marginals(out.filtered);
  out.pairwise.assign(T, JointTable());
  for (std::size_t t = T; t-- > 0;) {
    const auto& A = hmm.transition(controls[t]);
    const auto& pred = predicted[t].probs();
    const auto& next = marginals[t + 1].probs();
    JointTable joint = A * out.filtered[t].probs().asDiagonal();
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
      const double scale = pred[i] > 0.0 ? next[i] / pred[i] : 0.0;
      joint.row(i) *= scale;
    }
    joint /= joint.sum();
    marginals[t] = Belief::from_weights(joint.colwise().sum().transpose());
    out.pairwise[t] = std::move(joint);
  }
  out.marginals = std::move(marginals);
  return out;
}

double smoother_trajectory_entropy(const SmoothedPosteriors& smoothed) {
  if (smoothed.marginals.empty()) throw DomainError("empty smoother output");
  double h = discrete_entropy(smoothed.marginals.back());
  for (std::size_t t = 0; t < smoothed.pairwise.size(); ++t) {
    // Condition x_t on x_{t+1}: transpose so the conditioning state indexes columns.
    const JointTable backward = smoothed.pairwise[t].transpose();
    h += conditional_entropy_of_joint(backward, smoothed.marginals[t + 1]);
  }
  return h;
}

double map_error_rate(const SmoothedPosteriors& smoothed, std::span<const std::size_t> true_states,
                      std::size_t first, std::size_t last) {
  if (true_states.size() != smoothed.marginals.size()) {
    throw DomainError("true state trajectory length does not match the smoother output");
  }
  if (first >= last || last > true_states.size()) throw DomainError("empty or out-of-range time window");
  std::size_t errors = 0;
  for (std::size_t t = first; t < last; ++t) {
    if (smoothed.marginals[t].argmax() != true_states[t]) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(last - first);
}

}  // namespace sacontrol

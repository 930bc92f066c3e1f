#include "sacontrol/hmm_filter.hpp"

#include <cmath>
#include <sstream>

#include "sacontrol/errors.hpp"

namespace sacontrol {

namespace {

void check_size(const ControlledHmm& hmm, const Belief& belief) {
  if (belief.size() != hmm.n_states()) {
    std::ostringstream os;
    os << "belief has " << belief.size() << " states, model has " << hmm.n_states();
    throw DomainError(os.str());
  }
}

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

JointTable predict_joint(const ControlledHmm& hmm, const Belief& belief, std::size_t u) {
  check_size(hmm, belief);
  return hmm.transition(u) * belief.probs().asDiagonal();
}

Belief predict_marginal(const ControlledHmm& hmm, const Belief& belief, std::size_t u) {
  check_size(hmm, belief);
  return Belief::from_weights(hmm.transition(u) * belief.probs());
}

Belief measurement_update(const ControlledHmm& hmm, const Belief& predicted, Observation y) {
  check_size(hmm, predicted);
  Eigen::VectorXd w = hmm.emissions().likelihoods(y).cwiseProduct(predicted.probs());
  if (!(w.sum() > 0.0)) {
    std::ostringstream os;
    os << "observation " << y << " has zero likelihood under the predicted belief";
    throw DegenerateMeasurementError(os.str());
  }
  return Belief::from_weights(std::move(w));
}

Belief filter_update(const ControlledHmm& hmm, const Belief& belief, std::size_t u, Observation y) {
  return measurement_update(hmm, predict_marginal(hmm, belief, u), y);
}

double measurement_likelihood(const ControlledHmm& hmm, const Belief& belief, std::size_t u, Observation y) {
  const Belief pred = predict_marginal(hmm, belief, u);
  return hmm.emissions().likelihoods(y).dot(pred.probs());
}

double discrete_entropy(const Belief& belief) {
  double h = 0.0;
  for (std::size_t i = 0; i < belief.size(); ++i) h -= xlogx(belief[i]);
  return h;
}

double conditional_entropy_of_joint(const JointTable& joint, const Belief& prev) {
  const auto n = static_cast<Eigen::Index>(prev.size());
  if (joint.cols() != n) {
    throw ConsistencyError("joint table and previous belief disagree on the state count");
  }
  double h = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pj = prev[static_cast<std::size_t>(j)];
    const double marginal = joint.col(j).sum();
    if (std::abs(marginal - pj) > 1e-10) {
      std::ostringstream os;
      os << "joint table column " << j << " marginal " << marginal << " differs from previous belief " << pj;
      throw ConsistencyError(os.str());
    }
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
      const double p = joint(i, j);
      if (p > 0.0 && pj > 0.0) h -= p * std::log(p / pj);
    }
  }
  return h;
}

}  // namespace sacontrol

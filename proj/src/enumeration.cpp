#include "sacontrol/enumeration.hpp"

#include <cmath>
#include <string>

#include "sacontrol/errors.hpp"
#include "sacontrol/hmm_filter.hpp"
#include "sacontrol/stage_reward.hpp"

namespace sacontrol {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t guard) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > guard / base) {
      throw SizeGuardError("enumeration of " + std::to_string(base) + "^" + std::to_string(exp) +
                           " terms exceeds the guard of " + std::to_string(guard));
    }
    r *= base;
  }
  return r;
}

// Advance a mixed-radix counter; returns false after the last value.
bool next_sequence(std::vector<std::size_t>& digits, std::size_t radix) {
  for (auto& d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

// Unnormalised p(x^T, y^T | u^{T-1}) for every trajectory, in index order.
void joint_weights(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                   std::span<const Observation> observations, std::vector<double>& weights) {
  const std::size_t n = hmm.n_states();
  const std::size_t steps = observations.size();
  std::vector<std::size_t> x(steps, 0);
  std::size_t k = 0;
  do {
    double p = hmm.initial()[x[0]] * hmm.emissions().likelihood(x[0], observations[0]);
    for (std::size_t t = 1; t < steps && p > 0.0; ++t) {
      const auto& A = hmm.transition(controls[t - 1]);
      p *= A(static_cast<Eigen::Index>(x[t]), static_cast<Eigen::Index>(x[t - 1])) *
           hmm.emissions().likelihood(x[t], observations[t]);
    }
    weights[k++] = p;
  } while (next_sequence(x, n));
}

double entropy_of_weights(const std::vector<double>& w, double total) {
  double h = 0.0;
  for (double p : w) {
    if (p > 0.0) {
      const double q = p / total;
      h -= q * std::log(q);
    }
  }
  return h;
}

void check_lengths(std::span<const std::size_t> controls, std::span<const Observation> observations) {
  if (observations.size() != controls.size() + 1) {
    throw DomainError("enumeration needs one more observation than controls");
  }
}

}  // namespace

std::vector<double> trajectory_posterior_enumeration(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                                     std::span<const Observation> observations,
                                                     std::uint64_t guard) {
  check_lengths(controls, observations);
  std::vector<double> w(checked_power(hmm.n_states(), observations.size(), guard));
  joint_weights(hmm, controls, observations, w);
  double total = 0.0;
  for (double p : w) total += p;
  if (!(total > 0.0)) throw DegenerateMeasurementError("observation sequence has zero probability");
  for (double& p : w) p /= total;
  return w;
}

double trajectory_entropy_enumeration(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                      std::span<const Observation> observations, std::uint64_t guard) {
  const auto posterior = trajectory_posterior_enumeration(hmm, controls, observations, guard);
  return entropy_of_weights(posterior, 1.0);
}

double exact_smoother_entropy_enumeration(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                          std::uint64_t guard) {
  if (!hmm.emissions().is_discrete()) {
    throw DomainError("exact enumeration requires discrete emissions");
  }
  const std::size_t steps = controls.size() + 1;
  const std::size_t n_obs = hmm.emissions().n_observations();
  const auto n_traj = checked_power(hmm.n_states(), steps, guard);
  const auto n_seq = checked_power(n_obs, steps, guard);
  if (n_seq > guard / n_traj) {
    throw SizeGuardError("enumeration of " + std::to_string(n_traj) + " x " + std::to_string(n_seq) +
                         " terms exceeds the guard of " + std::to_string(guard));
  }

  std::vector<double> w(n_traj);
  std::vector<std::size_t> y(steps, 0);
  std::vector<Observation> obs(steps);
  double h = 0.0;
  do {
    for (std::size_t t = 0; t < steps; ++t) obs[t] = static_cast<double>(y[t]);
    joint_weights(hmm, controls, obs, w);
    double p_y = 0.0;
    for (double p : w) p_y += p;
    if (p_y > 0.0) h += p_y * entropy_of_weights(w, p_y);
  } while (next_sequence(y, n_obs));
  return h;
}

double expected_additive_objective(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                   std::uint64_t guard) {
  if (!hmm.emissions().is_discrete()) {
    throw DomainError("expected additive objective enumeration requires discrete emissions");
  }
  const std::size_t steps = controls.size() + 1;
  const std::size_t n_obs = hmm.emissions().n_observations();
  checked_power(n_obs, steps, guard);

  std::vector<std::size_t> y(steps, 0);
  std::vector<Observation> obs(steps);
  double total = 0.0;
  do {
    for (std::size_t t = 0; t < steps; ++t) obs[t] = static_cast<double>(y[t]);
    // p(y^T) as a product of one-step predictive likelihoods.
    double p_y = hmm.emissions().likelihoods(obs[0]).dot(hmm.initial().probs());
    if (!(p_y > 0.0)) continue;
    Belief belief = measurement_update(hmm, hmm.initial(), obs[0]);
    for (std::size_t t = 1; t < steps && p_y > 0.0; ++t) {
      p_y *= measurement_likelihood(hmm, belief, controls[t - 1], obs[t]);
      if (p_y > 0.0) belief = filter_update(hmm, belief, controls[t - 1], obs[t]);
    }
    if (p_y > 0.0) total += p_y * additive_objective_realisation(hmm, controls, obs);
  } while (next_sequence(y, n_obs));
  return total;
}

}  // namespace sacontrol

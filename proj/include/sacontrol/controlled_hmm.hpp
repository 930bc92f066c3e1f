#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "sacontrol/belief.hpp"

namespace sacontrol {

// Measurement value. Discrete emission models interpret it as a symbol index
// and require an exact nonnegative integer.
using Observation = double;

struct DiscreteEmission {
  Eigen::MatrixXd likelihood;  // n_states x n_obs, row i = p(y | x = i)
};

struct GaussianEmission {
  std::vector<double> means;  // per-state mean
  double std_dev = 1.0;
};

// p(y | x). Control-independent.
class EmissionModel {
 public:
  static constexpr double kRowTolerance = 1e-12;

  EmissionModel(DiscreteEmission d);
  EmissionModel(GaussianEmission g);

  std::size_t n_states() const;
  bool is_discrete() const { return std::holds_alternative<DiscreteEmission>(model_); }
  // Number of symbols; only meaningful for discrete models.
  std::size_t n_observations() const;

  double likelihood(std::size_t state, Observation y) const;
  Eigen::VectorXd likelihoods(Observation y) const;

  const DiscreteEmission* discrete() const { return std::get_if<DiscreteEmission>(&model_); }
  const GaussianEmission* gaussian() const { return std::get_if<GaussianEmission>(&model_); }

 private:
  std::size_t symbol_index(Observation y) const;

  std::variant<DiscreteEmission, GaussianEmission> model_;
};

// Finite-state controlled hidden Markov model.
//
// transitions[u](i, j) = P(X_{t+1} = i | X_t = j, U_t = u); every column is a
// probability vector. Controls are zero-based indices.
class ControlledHmm {
 public:
  static constexpr double kColumnTolerance = 1e-12;

  ControlledHmm(std::vector<Eigen::MatrixXd> transitions, EmissionModel emissions, Belief initial);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_controls() const { return transitions_.size(); }
  const Eigen::MatrixXd& transition(std::size_t u) const;
  const std::vector<Eigen::MatrixXd>& transitions() const { return transitions_; }
  const EmissionModel& emissions() const { return emissions_; }
  const Belief& initial() const { return initial_; }

  void check_control(std::size_t u) const;

 private:
  std::size_t n_states_;
  std::vector<Eigen::MatrixXd> transitions_;
  EmissionModel emissions_;
  Belief initial_;
};

}  // namespace sacontrol

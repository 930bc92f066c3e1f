#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace sacontrol {

// Probability vector over a finite state set (the information state).
//
// Every constructed Belief has nonnegative entries summing to one within
// 1e-12; inputs within 1e-9 of the simplex are accepted and renormalised.
class Belief {
 public:
  static constexpr double kInputTolerance = 1e-9;

  explicit Belief(Eigen::VectorXd probs);
  explicit Belief(std::span<const double> probs);

  // Normalise a nonnegative weight vector with positive total mass.
  static Belief from_weights(Eigen::VectorXd weights);
  static Belief uniform(std::size_t n);
  static Belief point_mass(std::size_t n, std::size_t state);

  std::size_t size() const { return static_cast<std::size_t>(probs_.size()); }
  double operator[](std::size_t i) const { return probs_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& probs() const { return probs_; }
  std::vector<double> to_vector() const;

  // Index of the largest entry; ties go to the lowest index.
  std::size_t argmax() const;

 private:
  struct Trusted {};
  Belief(Eigen::VectorXd probs, Trusted);

  Eigen::VectorXd probs_;
};

// Joint table over (x_t, x_{t-1}): rows index the later state, columns the
// earlier one, matching the column-stochastic transition convention.
using JointTable = Eigen::MatrixXd;

}  // namespace sacontrol

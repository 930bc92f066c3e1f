#pragma once

#include <span>

#include <Eigen/Core>

#include "sacontrol/robot_model.hpp"
#include "sacontrol/robot_scenario.hpp"

namespace sacontrol {

struct GaussianBelief {
  Eigen::Vector3d mean;  // (x, y, heading)
  Eigen::Matrix3d cov;

  RobotState pose() const { return RobotState::from_vector(mean); }
};

// Mean through the noiseless motion model; cov -> F cov F' + Q.
GaussianBelief ekf_predict(const GaussianBelief& belief, const UnicycleControl& u, const RobotScenario& scenario);

// Sequential per-landmark updates, one (range, bearing) per landmark in
// scenario order. Throws NumericalError on a singular innovation covariance.
GaussianBelief ekf_update(const GaussianBelief& belief, std::span<const Eigen::Vector2d> measurements,
                          const RobotScenario& scenario);

// 0.5 ln((2 pi e)^k det cov) in nats. Throws DomainError unless cov is SPD.
double gaussian_entropy(const Eigen::MatrixXd& cov);

}  // namespace sacontrol

#include "sacontrol/ekf.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "sacontrol/errors.hpp"

namespace sacontrol {

GaussianBelief ekf_predict(const GaussianBelief& belief, const UnicycleControl& u, const RobotScenario& scenario) {
  const RobotState pose = belief.pose();
  const Eigen::Matrix3d F = motion_jacobian(pose, u, scenario.dt);
  GaussianBelief out;
  out.mean = unicycle_step(pose, u, scenario.dt).vector();
  out.cov = F * belief.cov * F.transpose() + scenario.process_noise_cov;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

GaussianBelief ekf_update(const GaussianBelief& belief, std::span<const Eigen::Vector2d> measurements,
                          const RobotScenario& scenario) {
  if (measurements.size() != scenario.landmarks.size()) {
    throw DomainError("ekf_update needs one measurement per landmark");
  }
  const Eigen::Matrix2d& R = scenario.measurement_noise_cov;
  GaussianBelief b = belief;
  for (std::size_t j = 0; j < measurements.size(); ++j) {
    const RobotState pose = b.pose();
    const auto& m = scenario.landmarks[j];
    const Eigen::Matrix<double, 2, 3> H = measurement_jacobian(pose, m);
    Eigen::Vector2d innovation = measurements[j] - range_bearing(pose, m);
    innovation[1] = wrap_angle(innovation[1]);

    const Eigen::Matrix2d S = H * b.cov * H.transpose() + R;
    Eigen::FullPivLU<Eigen::Matrix2d> lu(S);
    if (!lu.isInvertible() || !(std::abs(S.determinant()) > 1e-300)) {
      throw NumericalError("singular innovation covariance at landmark " + std::to_string(j));
    }
    const Eigen::Matrix<double, 3, 2> K = b.cov * H.transpose() * lu.inverse();
    const Eigen::Matrix3d I_KH = Eigen::Matrix3d::Identity() - K * H;

    b.mean += K * innovation;
    b.mean[2] = wrap_angle(b.mean[2]);
    // Joseph form keeps the covariance positive semidefinite.
    b.cov = I_KH * b.cov * I_KH.transpose() + K * R * K.transpose();
    b.cov = 0.5 * (b.cov + b.cov.transpose()).eval();
  }
  return b;
}

double gaussian_entropy(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) throw DomainError("covariance must be square and non-empty");
  if (!cov.isApprox(cov.transpose(), 1e-10)) throw DomainError("covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw DomainError("covariance is not positive definite");
  const auto& L = llt.matrixL();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < cov.rows(); ++i) log_det += 2.0 * std::log(L(i, i));
  const double k = static_cast<double>(cov.rows());
  return 0.5 * (k * std::log(2.0 * std::numbers::pi * std::numbers::e) + log_det);
}

}  // namespace sacontrol

#include "sacontrol/robot_model.hpp"

#include <cmath>
#include <numbers>

#include "sacontrol/errors.hpp"

namespace sacontrol {

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle + std::numbers::pi, two_pi);
  if (a < 0.0) a += two_pi;
  a -= std::numbers::pi;
  // fmod can land exactly on +pi after the shift for inputs just below -pi.
  if (a >= std::numbers::pi) a -= two_pi;
  return a;
}

RobotState unicycle_step(const RobotState& s, const UnicycleControl& u, double dt, const Eigen::Vector3d& noise) {
  return {s.x + u.speed * dt * std::sin(s.heading) + noise[0],
          s.y + u.speed * dt * std::cos(s.heading) + noise[1],
          wrap_angle(s.heading + dt * u.turn_rate + noise[2])};
}

Eigen::Vector2d range_bearing(const RobotState& s, const Landmark& m, const Eigen::Vector2d& noise) {
  const double dx = m.x - s.x;
  const double dy = m.y - s.y;
  const double r = std::hypot(dx, dy);
  if (!(r > 0.0)) throw DomainError("range-bearing measurement undefined at zero range");
  return {r + noise[0], wrap_angle(std::atan2(dy, dx) - s.heading + noise[1])};
}

Eigen::Matrix3d motion_jacobian(const RobotState& s, const UnicycleControl& u, double dt) {
  Eigen::Matrix3d F = Eigen::Matrix3d::Identity();
  F(0, 2) = u.speed * dt * std::cos(s.heading);
  F(1, 2) = -u.speed * dt * std::sin(s.heading);
  return F;
}

Eigen::Matrix<double, 2, 3> measurement_jacobian(const RobotState& s, const Landmark& m) {
  const double dx = m.x - s.x;
  const double dy = m.y - s.y;
  const double q = dx * dx + dy * dy;
  if (!(q > 0.0)) throw DomainError("measurement Jacobian undefined at zero range");
  const double r = std::sqrt(q);
  Eigen::Matrix<double, 2, 3> H;
  H << -dx / r, -dy / r, 0.0,
       dy / q, -dx / q, -1.0;
  return H;
}

}  // namespace sacontrol

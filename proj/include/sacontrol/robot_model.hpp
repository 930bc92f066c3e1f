#pragma once

#include <Eigen/Core>

namespace sacontrol {

// Wrap an angle into [-pi, pi).
double wrap_angle(double angle);

struct RobotState {
  double x = 0.0;        // m
  double y = 0.0;        // m
  double heading = 0.0;  // rad, in [-pi, pi)

  Eigen::Vector3d vector() const { return {x, y, heading}; }
  static RobotState from_vector(const Eigen::Vector3d& v) { return {v[0], v[1], wrap_angle(v[2])}; }
};

struct Landmark {
  double x = 0.0;
  double y = 0.0;
};

struct UnicycleControl {
  double speed = 0.0;      // m/s
  double turn_rate = 0.0;  // rad/s
};

// x += v dt sin(theta), y += v dt cos(theta), theta += dt w, plus noise.
// Heading 0 therefore points along +y and pi/2 along +x.
RobotState unicycle_step(const RobotState& state, const UnicycleControl& u, double dt,
                         const Eigen::Vector3d& noise = Eigen::Vector3d::Zero());

// (range, bearing) to a landmark plus noise; bearing wrapped to [-pi, pi).
// Throws DomainError when the robot sits on the landmark.
Eigen::Vector2d range_bearing(const RobotState& state, const Landmark& landmark,
                              const Eigen::Vector2d& noise = Eigen::Vector2d::Zero());

// d unicycle_step / d state at zero noise.
Eigen::Matrix3d motion_jacobian(const RobotState& state, const UnicycleControl& u, double dt);

// d range_bearing / d state.
Eigen::Matrix<double, 2, 3> measurement_jacobian(const RobotState& state, const Landmark& landmark);

}  // namespace sacontrol

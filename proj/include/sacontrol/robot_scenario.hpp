#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "sacontrol/robot_model.hpp"

namespace sacontrol {

struct RobotScenario {
  std::vector<Landmark> landmarks;
  Eigen::Matrix3d process_noise_cov;      // W_t
  Eigen::Matrix2d measurement_noise_cov;  // V_t^j, shared by every landmark
  double dt = 1.0;
  RobotState goal{-150.0, 50.0, 0.0};
  double gamma = 100.0;
  std::size_t rollout_count = 10;
  std::size_t rollout_horizon = 10;
  double speed = 1.0;
  std::size_t turn_candidates = 64;
  RobotState initial_pose{0.0, 0.0, 1.5707963267948966};
  Eigen::Matrix3d initial_cov;
  std::size_t max_steps = 200;
  double goal_tolerance = 5.0;  // m
  // When false the simulated world (true state and sensors) is noiseless;
  // the filter still uses the covariances above.
  bool simulate_noise = true;

  // Throws ConfigError on a non-SPD covariance, dt <= 0, or empty candidates.
  void validate() const;
};

// Five-landmark map, Q = diag(0.1^2, 0.1^2, (pi/180)^2),
// R = diag(50^2, (pi/18)^2), goal (-150, 50, 0), gamma = 100.
RobotScenario default_robot_scenario();

// Every key is optional; missing keys keep default_robot_scenario() values.
// {landmarks: [[x, y], ...], process_noise_cov: [[3x3]], measurement_noise_cov: [[2x2]],
//  dt, goal: [x, y, heading], gamma, rollout_count, rollout_horizon, speed, turn_candidates,
//  initial_pose: [x, y, heading], initial_cov: [[3x3]], max_steps, goal_tolerance, simulate_noise}
RobotScenario robot_scenario_from_json(const nlohmann::json& doc);
nlohmann::json robot_scenario_to_json(const RobotScenario& scenario);

}  // namespace sacontrol

#include "sacontrol/robot_scenario.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "sacontrol/errors.hpp"

namespace sacontrol {

using nlohmann::json;

namespace {

template <int N>
Eigen::Matrix<double, N, N> square_from_json(const json& rows, const char* what) {
  if (!rows.is_array() || rows.size() != N) throw ConfigError(std::string(what) + " must have " + std::to_string(N) + " rows");
  Eigen::Matrix<double, N, N> m;
  for (int i = 0; i < N; ++i) {
    if (!rows[i].is_array() || rows[i].size() != N) {
      throw ConfigError(std::string(what) + " row " + std::to_string(i) + " has the wrong length");
    }
    for (int j = 0; j < N; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

template <int N>
json square_to_json(const Eigen::Matrix<double, N, N>& m) {
  json rows = json::array();
  for (int i = 0; i < N; ++i) {
    json row = json::array();
    for (int j = 0; j < N; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RobotState pose_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(std::string(what) + " must be [x, y, heading]");
  return {v[0].get<double>(), v[1].get<double>(), wrap_angle(v[2].get<double>())};
}

template <int N>
void check_spd(const Eigen::Matrix<double, N, N>& m, const char* what) {
  if (!m.allFinite() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw ConfigError(std::string(what) + " must be finite and symmetric");
  }
  Eigen::LLT<Eigen::Matrix<double, N, N>> llt(m);
  if (llt.info() != Eigen::Success) throw ConfigError(std::string(what) + " must be positive definite");
}

}  // namespace

void RobotScenario::validate() const {
  check_spd(process_noise_cov, "process_noise_cov");
  check_spd(measurement_noise_cov, "measurement_noise_cov");
  check_spd(initial_cov, "initial_cov");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (gamma < 0.0) throw ConfigError("gamma must be nonnegative");
  if (turn_candidates == 0) throw ConfigError("turn_candidates must be positive");
  if (rollout_count == 0 || rollout_horizon == 0) throw ConfigError("rollout_count and rollout_horizon must be positive");
  if (landmarks.empty()) throw ConfigError("scenario needs at least one landmark");
  if (!(goal_tolerance >= 0.0)) throw ConfigError("goal_tolerance must be nonnegative");
}

RobotScenario default_robot_scenario() {
  RobotScenario s;
  // Three landmarks close to the direct route from the start to the goal and
  // two further off it.
  s.landmarks = {{-35.0, 15.0}, {-75.0, 22.0}, {-115.0, 42.0}, {-40.0, 95.0}, {-140.0, 110.0}};
  s.process_noise_cov = Eigen::Vector3d(0.1 * 0.1, 0.1 * 0.1, std::pow(std::numbers::pi / 180.0, 2)).asDiagonal();
  s.measurement_noise_cov = Eigen::Vector2d(50.0 * 50.0, std::pow(std::numbers::pi / 18.0, 2)).asDiagonal();
  s.initial_cov = Eigen::Vector3d(1.0, 1.0, std::pow(std::numbers::pi / 18.0, 2)).asDiagonal();
  return s;
}

RobotScenario robot_scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("robot scenario must be a JSON object");
  RobotScenario s = default_robot_scenario();
  try {
    if (doc.contains("landmarks")) {
      s.landmarks.clear();
      for (const auto& m : doc.at("landmarks")) {
        if (!m.is_array() || m.size() != 2) throw ConfigError("each landmark must be [x, y]");
        s.landmarks.push_back({m[0].get<double>(), m[1].get<double>()});
      }
    }
    if (doc.contains("process_noise_cov")) s.process_noise_cov = square_from_json<3>(doc.at("process_noise_cov"), "process_noise_cov");
    if (doc.contains("measurement_noise_cov")) {
      s.measurement_noise_cov = square_from_json<2>(doc.at("measurement_noise_cov"), "measurement_noise_cov");
    }
    if (doc.contains("initial_cov")) s.initial_cov = square_from_json<3>(doc.at("initial_cov"), "initial_cov");
    if (doc.contains("goal")) s.goal = pose_from_json(doc.at("goal"), "goal");
    if (doc.contains("initial_pose")) s.initial_pose = pose_from_json(doc.at("initial_pose"), "initial_pose");
    s.dt = doc.value("dt", s.dt);
    s.gamma = doc.value("gamma", s.gamma);
    s.rollout_count = doc.value("rollout_count", s.rollout_count);
    s.rollout_horizon = doc.value("rollout_horizon", s.rollout_horizon);
    s.speed = doc.value("speed", s.speed);
    s.turn_candidates = doc.value("turn_candidates", s.turn_candidates);
    s.max_steps = doc.value("max_steps", s.max_steps);
    s.goal_tolerance = doc.value("goal_tolerance", s.goal_tolerance);
    s.simulate_noise = doc.value("simulate_noise", s.simulate_noise);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed robot scenario: ") + e.what());
  }
  s.validate();
  return s;
}

json robot_scenario_to_json(const RobotScenario& s) {
  json landmarks = json::array();
  for (const auto& m : s.landmarks) landmarks.push_back({m.x, m.y});
  return {{"landmarks", std::move(landmarks)},
          {"process_noise_cov", square_to_json<3>(s.process_noise_cov)},
          {"measurement_noise_cov", square_to_json<2>(s.measurement_noise_cov)},
          {"dt", s.dt},
          {"goal", {s.goal.x, s.goal.y, s.goal.heading}},
          {"gamma", s.gamma},
          {"rollout_count", s.rollout_count},
          {"rollout_horizon", s.rollout_horizon},
          {"speed", s.speed},
          {"turn_candidates", s.turn_candidates},
          {"initial_pose", {s.initial_pose.x, s.initial_pose.y, s.initial_pose.heading}},
          {"initial_cov", square_to_json<3>(s.initial_cov)},
          {"max_steps", s.max_steps},
          {"goal_tolerance", s.goal_tolerance},
          {"simulate_noise", s.simulate_noise}};
}

}  // namespace sacontrol

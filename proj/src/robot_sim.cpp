#include "sacontrol/robot_sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "sacontrol/errors.hpp"
#include "sacontrol/parallel.hpp"
#include "sacontrol/seeding.hpp"

namespace sacontrol {

namespace {

// Square root factor usable for sampling from a PSD covariance.
template <int N>
Eigen::Matrix<double, N, N> sampling_factor(const Eigen::Matrix<double, N, N>& cov) {
  Eigen::LLT<Eigen::Matrix<double, N, N>> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> eig(cov);
  return eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

template <int N>
Eigen::Matrix<double, N, 1> standard_normal(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  Eigen::Matrix<double, N, 1> z;
  for (int i = 0; i < N; ++i) z[i] = normal(rng);
  return z;
}

double squared_goal_error(const Eigen::Vector3d& mean, const RobotState& goal) {
  const double dx = mean[0] - goal.x;
  const double dy = mean[1] - goal.y;
  const double dh = wrap_angle(mean[2] - goal.heading);
  return dx * dx + dy * dy + dh * dh;
}

double goal_distance(const RobotState& pose, const RobotState& goal) { return std::hypot(pose.x - goal.x, pose.y - goal.y); }

// Noise for one rollout, drawn once and replayed for every candidate.
struct RolloutNoise {
  Eigen::Vector3d initial;
  std::vector<Eigen::Vector3d> process;
  std::vector<Eigen::Vector2d> measurement;  // horizon x landmarks, row-major
};

std::vector<Eigen::Vector2d> measure_all(const RobotState& pose, const RobotScenario& scenario,
                                         const Eigen::Matrix2d& r_factor, const Eigen::Vector2d* noise) {
  std::vector<Eigen::Vector2d> out;
  out.reserve(scenario.landmarks.size());
  for (std::size_t j = 0; j < scenario.landmarks.size(); ++j) {
    const Eigen::Vector2d v = scenario.simulate_noise ? Eigen::Vector2d(r_factor * noise[j]) : Eigen::Vector2d::Zero();
    out.push_back(range_bearing(pose, scenario.landmarks[j], v));
  }
  return out;
}

}  // namespace

std::vector<double> turn_rate_candidates(std::size_t count) {
  if (count == 0) throw DomainError("need at least one turn rate candidate");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
  }
  return out;
}

RolloutScores score_turn_rates(const GaussianBelief& belief, const RobotScenario& scenario,
                               const std::vector<double>& candidates, std::uint64_t rollout_seed,
                               bool include_process_entropy) {
  if (candidates.empty()) throw DomainError("need at least one turn rate candidate");
  const std::size_t H = scenario.rollout_horizon;
  const std::size_t L = scenario.landmarks.size();
  const Eigen::Matrix3d belief_factor = sampling_factor<3>(belief.cov);
  const Eigen::Matrix3d q_factor = sampling_factor<3>(scenario.process_noise_cov);
  const Eigen::Matrix2d r_factor = sampling_factor<2>(scenario.measurement_noise_cov);
  const double h_process = include_process_entropy ? gaussian_entropy(scenario.process_noise_cov) : 0.0;

  std::vector<RolloutNoise> noise(scenario.rollout_count);
  for (std::size_t n = 0; n < noise.size(); ++n) {
    std::mt19937_64 rng(derive_seed(rollout_seed, n));
    std::normal_distribution<double> normal(0.0, 1.0);
    noise[n].initial = standard_normal<3>(rng, normal);
    for (std::size_t k = 0; k < H; ++k) {
      noise[n].process.push_back(standard_normal<3>(rng, normal));
      for (std::size_t j = 0; j < L; ++j) noise[n].measurement.push_back(standard_normal<2>(rng, normal));
    }
  }

  RolloutScores out{candidates, std::vector<double>(candidates.size(), 0.0)};
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const UnicycleControl u{scenario.speed, candidates[c]};
    double total = 0.0;
    for (const auto& nz : noise) {
      RobotState truth = scenario.simulate_noise ? RobotState::from_vector(belief.mean + belief_factor * nz.initial)
                                                 : belief.pose();
      GaussianBelief b = belief;
      for (std::size_t k = 0; k < H; ++k) {
        const Eigen::Vector3d w = scenario.simulate_noise ? Eigen::Vector3d(q_factor * nz.process[k])
                                                          : Eigen::Vector3d::Zero();
        truth = unicycle_step(truth, u, scenario.dt, w);
        const auto y = measure_all(truth, scenario, r_factor, &nz.measurement[k * L]);
        const GaussianBelief pred = ekf_predict(b, u, scenario);
        b = ekf_update(pred, y, scenario);
        total += gaussian_entropy(b.cov) - gaussian_entropy(pred.cov) + h_process -
                 scenario.gamma * squared_goal_error(b.mean, scenario.goal);
      }
    }
    out.scores[c] = total / static_cast<double>(noise.size());
  }
  return out;
}

double select_turn_rate(const RolloutScores& s) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < s.candidates.size(); ++c) {
    const double u = s.candidates[c];
    const double b = s.candidates[best];
    if (s.scores[c] > s.scores[best]) {
      best = c;
    } else if (s.scores[c] == s.scores[best]) {
      if (std::abs(u) < std::abs(b) || (std::abs(u) == std::abs(b) && u < b)) best = c;
    }
  }
  return s.candidates[best];
}

double receding_horizon_control(const GaussianBelief& belief, const RobotScenario& scenario,
                                std::uint64_t rollout_seed) {
  return select_turn_rate(
      score_turn_rates(belief, scenario, turn_rate_candidates(scenario.turn_candidates), rollout_seed));
}

std::vector<RobotState> NavigationRecord::poses() const {
  std::vector<RobotState> out{initial_pose};
  for (const auto& s : steps) out.push_back(s.pose);
  return out;
}

NavigationRecord run_navigation(const RobotScenario& scenario, std::uint64_t episode_seed) {
  scenario.validate();
  std::mt19937_64 world(derive_seed(episode_seed, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::uint64_t planner_seed = derive_seed(episode_seed, 1);
  const Eigen::Matrix3d q_factor = sampling_factor<3>(scenario.process_noise_cov);
  const Eigen::Matrix2d r_factor = sampling_factor<2>(scenario.measurement_noise_cov);
  const double h_process = gaussian_entropy(scenario.process_noise_cov);

  NavigationRecord rec;
  rec.seed = episode_seed;
  rec.initial_belief = {scenario.initial_pose.vector(), scenario.initial_cov};
  rec.initial_pose = scenario.initial_pose;
  if (scenario.simulate_noise) {
    rec.initial_pose = RobotState::from_vector(scenario.initial_pose.vector() +
                                               sampling_factor<3>(scenario.initial_cov) * standard_normal<3>(world, normal));
  }

  RobotState truth = rec.initial_pose;
  GaussianBelief belief = rec.initial_belief;
  std::vector<Eigen::Vector2d> meas_noise(scenario.landmarks.size());
  for (std::size_t t = 0; t < scenario.max_steps; ++t) {
    if (goal_distance(truth, scenario.goal) < scenario.goal_tolerance) break;
    const double turn = receding_horizon_control(belief, scenario, derive_seed(planner_seed, t));
    const UnicycleControl u{scenario.speed, turn};

    // Always draw so the world stream does not depend on simulate_noise.
    const Eigen::Vector3d w = q_factor * standard_normal<3>(world, normal);
    for (auto& v : meas_noise) v = standard_normal<2>(world, normal);
    truth = unicycle_step(truth, u, scenario.dt, scenario.simulate_noise ? w : Eigen::Vector3d::Zero());
    const auto y = measure_all(truth, scenario, r_factor, meas_noise.data());

    const GaussianBelief pred = ekf_predict(belief, u, scenario);
    belief = ekf_update(pred, y, scenario);
    rec.steps.push_back({truth, turn, belief, gaussian_entropy(belief.cov), gaussian_entropy(pred.cov), h_process});
  }
  rec.reached_goal = goal_distance(truth, scenario.goal) < scenario.goal_tolerance;
  return rec;
}

double min_landmark_distance(const NavigationRecord& record, const RobotScenario& scenario) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : record.poses()) {
    for (const auto& m : scenario.landmarks) best = std::min(best, std::hypot(p.x - m.x, p.y - m.y));
  }
  return best;
}

double final_goal_distance(const NavigationRecord& record, const RobotScenario& scenario) {
  return goal_distance(record.poses().back(), scenario.goal);
}

TrajectoryStats trajectory_stats(const std::vector<NavigationRecord>& batch, const RobotScenario& scenario) {
  if (batch.empty()) throw DomainError("trajectory_stats needs a non-empty batch");
  std::vector<std::vector<RobotState>> paths;
  std::size_t length = 0;
  for (const auto& r : batch) {
    paths.push_back(r.poses());
    length = std::max(length, paths.back().size());
  }
  for (auto& p : paths) p.resize(length, p.back());

  const double n = static_cast<double>(batch.size());
  TrajectoryStats st;
  st.mean_path.assign(length, Eigen::Vector2d::Zero());
  st.std_path.assign(length, Eigen::Vector2d::Zero());
  for (std::size_t t = 0; t < length; ++t) {
    for (const auto& p : paths) st.mean_path[t] += Eigen::Vector2d(p[t].x, p[t].y);
    st.mean_path[t] /= n;
    for (const auto& p : paths) {
      const Eigen::Vector2d d = Eigen::Vector2d(p[t].x, p[t].y) - st.mean_path[t];
      st.std_path[t] += d.cwiseProduct(d);
    }
    st.std_path[t] = (st.std_path[t] / n).cwiseSqrt();
  }
  for (const auto& r : batch) {
    st.mean_min_landmark_distance += min_landmark_distance(r, scenario) / n;
    st.mean_final_goal_distance += final_goal_distance(r, scenario) / n;
    st.goal_reached_fraction += (r.reached_goal ? 1.0 : 0.0) / n;
    st.mean_steps += static_cast<double>(r.steps.size()) / n;
  }
  return st;
}

std::vector<NavigationRecord> run_navigation_batch(const RobotScenario& scenario, std::size_t episodes,
                                                   std::uint64_t master_seed, std::size_t threads) {
  std::vector<NavigationRecord> out(episodes);
  parallel_for(episodes, [&](std::size_t i) { out[i] = run_navigation(scenario, derive_seed(master_seed, i)); }, threads);
  return out;
}

}  // namespace sacontrol

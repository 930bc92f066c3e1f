#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"

#include "sacontrol/ekf.hpp"
#include "sacontrol/errors.hpp"
#include "sacontrol/robot_model.hpp"
#include "sacontrol/robot_scenario.hpp"
#include "sacontrol/robot_sim.hpp"

#include "oracle_values.hpp"

using namespace sacontrol;

namespace {

constexpr double kPi = std::numbers::pi;

bool in_range(double a) { return a >= -kPi && a < kPi; }

void check_psd(const Eigen::Matrix3d& cov) {
  CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
}

RobotScenario small_scenario() {
  auto s = default_robot_scenario();
  s.rollout_count = 3;
  s.rollout_horizon = 5;
  s.turn_candidates = 8;
  s.max_steps = 20;
  return s;
}

}  // namespace

TEST_CASE("angle wrapping") {
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> a(-100.0, 100.0);
  for (int k = 0; k < 2000; ++k) {
    const double x = a(rng);
    const double w = wrap_angle(x);
    CHECK(in_range(w));
    CHECK(std::abs(std::remainder(x - w, 2 * kPi)) < 1e-9);
  }
}

TEST_CASE("unicycle motion as printed") {
  const RobotState s{2.0, 3.0, 0.0};
  const auto a = unicycle_step(s, {1.0, 0.0}, 1.0);
  CHECK(a.x == doctest::Approx(2.0));
  CHECK(a.y == doctest::Approx(4.0));
  const auto b = unicycle_step(s, {0.0, 0.0}, 1.0);
  CHECK(b.x == s.x);
  CHECK(b.y == s.y);
  CHECK(b.heading == s.heading);
  const auto c = unicycle_step({2.0, 3.0, kPi / 2}, {1.0, 0.0}, 1.0);
  CHECK(c.x == doctest::Approx(3.0));
  CHECK(c.y == doctest::Approx(3.0));
  const auto d = unicycle_step({0, 0, 3.0}, {1.0, 1.0}, 1.0);
  CHECK(in_range(d.heading));
}

TEST_CASE("range and bearing") {
  const auto z = range_bearing({0, 0, 0}, {3, 4});
  CHECK(z[0] == doctest::Approx(5.0));
  CHECK(z[1] == doctest::Approx(std::atan2(4.0, 3.0)));
  CHECK(range_bearing({1, 1, 0.7}, {1 + std::cos(0.7) * 9, 1 + std::sin(0.7) * 9})[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(range_bearing({1, 2, 0}, {1, 2}), DomainError);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> p(-50.0, 50.0), h(-kPi, kPi);
  for (int k = 0; k < 500; ++k) {
    const RobotState s{p(rng), p(rng), h(rng)};
    const Landmark m{p(rng), p(rng)};
    const auto r = range_bearing(s, m);
    const double dx = m.x - s.x, dy = m.y - s.y;
    CHECK(r[0] == doctest::Approx(std::sqrt(dx * dx + dy * dy)).epsilon(1e-14));
    double bearing = std::atan2(dy, dx) - s.heading;
    while (bearing >= kPi) bearing -= 2 * kPi;
    while (bearing < -kPi) bearing += 2 * kPi;
    CHECK(std::abs(r[1] - bearing) < 1e-12);
    CHECK(in_range(r[1]));
  }
}

TEST_CASE("Jacobians against central differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> p(-50.0, 50.0), h(-3.0, 3.0), w(-1.0, 1.0);
  const double eps = 1e-6;
  for (int k = 0; k < 200; ++k) {
    const RobotState s{p(rng), p(rng), h(rng)};
    const UnicycleControl u{1.0 + w(rng), w(rng)};
    const Landmark m{p(rng), p(rng)};
    const auto F = motion_jacobian(s, u, 1.0);
    const auto H = measurement_jacobian(s, m);
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d dp = s.vector(), dm = s.vector();
      dp[j] += eps;
      dm[j] -= eps;
      const RobotState sp{dp[0], dp[1], dp[2]}, sm{dm[0], dm[1], dm[2]};
      Eigen::Vector3d df = (unicycle_step(sp, u, 1.0).vector() - unicycle_step(sm, u, 1.0).vector());
      df[2] = wrap_angle(df[2]);
      df /= 2 * eps;
      CHECK((df - F.col(j)).cwiseAbs().maxCoeff() < 1e-6);
      Eigen::Vector2d dz = range_bearing(sp, m) - range_bearing(sm, m);
      dz[1] = wrap_angle(dz[1]);
      dz /= 2 * eps;
      CHECK((dz - H.col(j)).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("gaussian entropy") {
  const double ident = 1.5 * std::log(2 * kPi * std::numbers::e);
  CHECK(std::abs(gaussian_entropy(Eigen::Matrix3d::Identity()) - ident) < 1e-12);
  CHECK(ident == doctest::Approx(4.2568).epsilon(1e-4));
  const Eigen::Matrix3d c = Eigen::Vector3d(2.0, 0.5, 3.0).asDiagonal();
  CHECK(gaussian_entropy(4.0 * c) - gaussian_entropy(c) == doctest::Approx(1.5 * std::log(4.0)).epsilon(1e-13));
  CHECK(gaussian_entropy(default_robot_scenario().process_noise_cov) ==
        doctest::Approx(oracle::gaussian_entropy_q).epsilon(1e-13));
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(2, 2) = -1.0;
  CHECK_THROWS_AS(gaussian_entropy(bad), DomainError);
  bad = Eigen::Matrix3d::Identity();
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(gaussian_entropy(bad), DomainError);
}

TEST_CASE("EKF predict") {
  auto s = default_robot_scenario();
  s.process_noise_cov.setZero();
  const GaussianBelief b0{Eigen::Vector3d(1, 2, 0.3), Eigen::Matrix3d::Zero()};
  const auto p = ekf_predict(b0, {1.0, 0.2}, s);
  CHECK(p.cov.isZero());
  CHECK((p.mean - unicycle_step(b0.pose(), {1.0, 0.2}, 1.0).vector()).norm() < 1e-15);

  const auto d = default_robot_scenario();
  const GaussianBelief b1{Eigen::Vector3d(1, 2, 0.3), Eigen::Vector3d(1, 2, 0.1).asDiagonal()};
  const auto still = ekf_predict(b1, {0.0, 0.0}, d);
  CHECK((still.cov - (b1.cov + d.process_noise_cov)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("EKF update") {
  auto s = default_robot_scenario();
  const GaussianBelief b{Eigen::Vector3d(-20, 30, 0.4), Eigen::Vector3d(4, 9, 0.05).asDiagonal()};
  std::vector<Eigen::Vector2d> exact;
  for (const auto& m : s.landmarks) exact.push_back(range_bearing(b.pose(), m));
  const auto u = ekf_update(b, exact, s);
  CHECK((u.mean - b.mean).norm() < 1e-12);
  CHECK(u.cov.trace() < b.cov.trace());

  auto blind = s;
  blind.measurement_noise_cov = Eigen::Vector2d(1e20, 1e20).asDiagonal();
  const auto nb = ekf_update(b, exact, blind);
  CHECK((nb.cov - b.cov).norm() / b.cov.norm() < 1e-6);

  auto exact_sensor = s;
  exact_sensor.measurement_noise_cov.setZero();
  const GaussianBelief certain{b.mean, Eigen::Matrix3d::Zero()};
  CHECK_THROWS_AS(ekf_update(certain, exact, exact_sensor), NumericalError);
  const std::vector<Eigen::Vector2d> too_few(2, Eigen::Vector2d(10, 0));
  CHECK_THROWS_AS(ekf_update(b, too_few, s), DomainError);

  // Single updates never raise the trace; the covariance stays symmetric PSD.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  GaussianBelief g{s.initial_pose.vector(), s.initial_cov};
  RobotState truth = s.initial_pose;
  for (int t = 0; t < 60; ++t) {
    const UnicycleControl c{1.0, 0.3 * n(rng)};
    truth = unicycle_step(truth, c, 1.0, Eigen::Vector3d(0.1 * n(rng), 0.1 * n(rng), 0.017 * n(rng)));
    g = ekf_predict(g, c, s);
    check_psd(g.cov);
    CHECK(in_range(g.mean[2]));
    for (std::size_t j = 0; j < s.landmarks.size(); ++j) {
      auto one = s;
      one.landmarks = {s.landmarks[j]};
      const Eigen::Vector2d z = range_bearing(truth, s.landmarks[j], Eigen::Vector2d(50 * n(rng), 0.17 * n(rng)));
      const std::vector<Eigen::Vector2d> zs{Eigen::Vector2d(z[0], wrap_angle(z[1]))};
      const auto next = ekf_update(g, zs, one);
      CHECK(next.cov.trace() <= g.cov.trace() + 1e-12);
      check_psd(next.cov);
      CHECK(in_range(next.mean[2]));
      g = next;
    }
  }
}

TEST_CASE("candidate set and selection rules") {
  const auto c = turn_rate_candidates(16);
  REQUIRE(c.size() == 16);
  CHECK(c.front() == doctest::Approx(-kPi));
  CHECK(c[8] == 0.0);
  CHECK(c.back() < kPi);
  CHECK_THROWS_AS(turn_rate_candidates(0), DomainError);

  CHECK(select_turn_rate({{-0.5, 0.5, 0.0}, {1.0, 1.0, 0.0}}) == -0.5);
  CHECK(select_turn_rate({{-0.5, 0.5, 0.0}, {1.0, 1.0, 1.0}}) == 0.0);
  CHECK(select_turn_rate({{0.7}, {-1e9}}) == 0.7);

  const auto s = small_scenario();
  const GaussianBelief b{s.initial_pose.vector(), s.initial_cov};
  const std::vector<double> single{0.3};
  CHECK(select_turn_rate(score_turn_rates(b, s, single, 9)) == 0.3);
}

TEST_CASE("process entropy term does not change score differences") {
  const auto s = small_scenario();
  const GaussianBelief b{s.initial_pose.vector(), s.initial_cov};
  const auto c = turn_rate_candidates(8);
  const auto with = score_turn_rates(b, s, c, 21, true);
  const auto without = score_turn_rates(b, s, c, 21, false);
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double scale = std::abs(with.scores[0]) + std::abs(with.scores[k]);
    CHECK(std::abs((with.scores[k] - with.scores[0]) - (without.scores[k] - without.scores[0])) < 1e-13 * scale);
  }
  CHECK(select_turn_rate(with) == select_turn_rate(without));
}

TEST_CASE("mirrored score symmetry at gamma 0") {
  auto s = default_robot_scenario();
  s.gamma = 0.0;
  s.landmarks = {{-15.0, 20.0}, {15.0, 20.0}};
  s.rollout_count = 400;
  s.rollout_horizon = 6;
  const GaussianBelief b{Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 1, 0.01).asDiagonal()};
  const std::vector<double> c{-1.0, -0.4, 0.4, 1.0};
  // Average over two seeds, the second standing in for the mirrored noise.
  const auto a = score_turn_rates(b, s, c, 100);
  const auto m = score_turn_rates(b, s, c, 200);
  for (std::size_t k = 0; k < 2; ++k) {
    const double left = 0.5 * (a.scores[k] + m.scores[k]);
    const double right = 0.5 * (a.scores[3 - k] + m.scores[3 - k]);
    CHECK(std::abs(left - right) < 0.02 * std::abs(left) + 0.02);
  }
}

TEST_CASE("cost-dominated limit picks the most direct turn") {
  auto s = default_robot_scenario();
  s.gamma = 1e9;
  s.simulate_noise = false;
  const GaussianBelief b{Eigen::Vector3d(0, 0, 0), s.initial_cov};
  const auto c = turn_rate_candidates(16);
  const double chosen = select_turn_rate(score_turn_rates(b, s, c, 5));

  double best_cost = 1e300, best_u = 0.0;
  for (double u : c) {
    RobotState x{0, 0, 0};
    double cost = 0.0;
    for (int k = 0; k < 10; ++k) {
      x = unicycle_step(x, {1.0, u}, 1.0);
      const double dx = x.x - s.goal.x, dy = x.y - s.goal.y, dh = wrap_angle(x.heading - s.goal.heading);
      cost += dx * dx + dy * dy + dh * dh;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_u = u;
    }
  }
  CHECK(chosen == best_u);
  CHECK(chosen < 0.0);  // goal lies towards -x
}

TEST_CASE("noiseless navigation reaches the goal") {
  auto s = default_robot_scenario();
  s.simulate_noise = false;
  s.rollout_count = 1;
  s.goal_tolerance = 1.0;
  s.max_steps = 400;
  const auto rec = run_navigation(s, 8);
  CHECK(rec.reached_goal);
  CHECK(final_goal_distance(rec, s) < 1.0);
  const auto poses = rec.poses();
  std::size_t closer = 0;
  for (std::size_t t = 1; t < poses.size(); ++t) {
    const double a = std::hypot(poses[t - 1].x - s.goal.x, poses[t - 1].y - s.goal.y);
    const double b = std::hypot(poses[t].x - s.goal.x, poses[t].y - s.goal.y);
    closer += b < a ? 1 : 0;
  }
  CHECK(static_cast<double>(closer) >= 0.9 * static_cast<double>(poses.size() - 1));
}

TEST_CASE("navigation is deterministic and statistics recount") {
  const auto s = small_scenario();
  const auto a = run_navigation(s, 31);
  const auto b = run_navigation(s, 31);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t t = 0; t < a.steps.size(); ++t) {
    CHECK(a.steps[t].pose.x == b.steps[t].pose.x);
    CHECK(a.steps[t].turn_rate == b.steps[t].turn_rate);
    CHECK(a.steps[t].belief.cov == b.steps[t].belief.cov);
    check_psd(a.steps[t].belief.cov);
  }

  const auto batch = run_navigation_batch(s, 3, 17, 1);
  const auto batch3 = run_navigation_batch(s, 3, 17, 3);
  const auto st = trajectory_stats(batch, s);
  const auto st3 = trajectory_stats(batch3, s);
  CHECK(st.mean_min_landmark_distance == st3.mean_min_landmark_distance);

  double lm = 0.0, goal = 0.0;
  for (const auto& r : batch) {
    double best = 1e300;
    for (const auto& p : r.poses())
      for (const auto& m : s.landmarks) best = std::min(best, std::hypot(p.x - m.x, p.y - m.y));
    lm += best;
    const auto last = r.poses().back();
    goal += std::hypot(last.x - s.goal.x, last.y - s.goal.y);
  }
  CHECK(st.mean_min_landmark_distance == doctest::Approx(lm / 3.0).epsilon(1e-14));
  CHECK(st.mean_final_goal_distance == doctest::Approx(goal / 3.0).epsilon(1e-14));
  CHECK(st.mean_path.size() == s.max_steps + 1);

  const auto same = trajectory_stats({a, a, a}, s);
  for (const auto& sd : same.std_path) CHECK(sd.norm() < 1e-12);

  NavigationRecord left, right;
  left.initial_pose = {-2.0, 0.0, 0.0};
  right.initial_pose = {2.0, 0.0, 0.0};
  left.steps.push_back({{-3.0, 1.0, 0.0}, 0.0, {}, 0, 0, 0});
  right.steps.push_back({{3.0, 1.0, 0.0}, 0.0, {}, 0, 0, 0});
  const auto mirrored = trajectory_stats({left, right}, s);
  for (const auto& m : mirrored.mean_path) CHECK(m.x() == doctest::Approx(0.0));
  CHECK_THROWS_AS(trajectory_stats({}, s), DomainError);
}

TEST_CASE("robot scenario json") {
  const auto d = default_robot_scenario();
  CHECK(d.landmarks.size() == 5);
  for (const auto& m : d.landmarks) {
    CHECK(m.x >= -160.0);
    CHECK(m.x <= 20.0);
    CHECK(m.y >= -20.0);
    CHECK(m.y <= 120.0);
  }
  auto doc = robot_scenario_to_json(d);
  const auto back = robot_scenario_from_json(doc);
  CHECK(back.landmarks.size() == 5);
  CHECK(back.process_noise_cov == d.process_noise_cov);
  CHECK(back.turn_candidates == d.turn_candidates);
  const auto partial = robot_scenario_from_json({{"gamma", 0.06}});
  CHECK(partial.gamma == 0.06);
  CHECK(partial.goal.x == -150.0);

  doc["dt"] = 0.0;
  CHECK_THROWS_AS(robot_scenario_from_json(doc).validate(), ConfigError);
  auto bad = d;
  bad.measurement_noise_cov(0, 0) = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = d;
  bad.turn_candidates = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

#include "sacontrol/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "sacontrol/ekf.hpp"
#include "sacontrol/enumeration.hpp"
#include "sacontrol/hmm_filter.hpp"
#include "sacontrol/smoother.hpp"

namespace sacontrol {

namespace {

Eigen::VectorXd random_simplex(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = unif(rng);
  return v / v.sum();
}

ControlledHmm corrupted(const ControlledHmm& hmm, std::size_t u) {
  auto transitions = hmm.transitions();
  auto& a = transitions[u];
  const Eigen::Index last = a.rows() - 1;
  a.col(0) = 0.5 * a.col(0);
  a(last, 0) += 0.5;
  return ControlledHmm(std::move(transitions), hmm.emissions(), hmm.initial());
}

VerifyCase make_case(std::string name, double lhs, double rhs, double tol) {
  const double d = std::abs(lhs - rhs);
  return {std::move(name), d, tol, d <= tol};
}

}  // namespace

ControlledHmm random_discrete_hmm(std::size_t n_states, std::size_t n_obs, std::size_t n_controls,
                                  std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(n_states);
  std::vector<Eigen::MatrixXd> transitions;
  for (std::size_t u = 0; u < n_controls; ++u) {
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a.col(j) = random_simplex(n_states, rng);
    transitions.push_back(std::move(a));
  }
  Eigen::MatrixXd like(n, static_cast<Eigen::Index>(n_obs));
  for (Eigen::Index i = 0; i < n; ++i) like.row(i) = random_simplex(n_obs, rng).transpose();
  return ControlledHmm(std::move(transitions), EmissionModel(DiscreteEmission{like}),
                       Belief(random_simplex(n_states, rng)));
}

bool VerifyReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.passed; });
}

VerifyReport run_verify_suite(FaultInjection fault) {
  VerifyReport report;
  std::mt19937_64 rng(20240611);
  constexpr std::size_t kInstances = 25;
  for (std::size_t k = 0; k < kInstances; ++k) {
    const std::size_t n = 2 + k % 2;
    const std::size_t m = 2 + (k / 2) % 2;
    const std::size_t horizon = k % 5;
    const auto hmm = random_discrete_hmm(n, m, 2, rng);
    std::vector<std::size_t> controls(horizon);
    for (auto& u : controls) u = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    std::vector<Observation> obs(horizon + 1);
    for (auto& y : obs) y = static_cast<double>(std::uniform_int_distribution<std::size_t>(0, m - 1)(rng));

    const ControlledHmm model =
        (fault == FaultInjection::kCorruptTransition && horizon > 0) ? corrupted(hmm, controls[0]) : hmm;
    const std::string tag = std::to_string(k) + " (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                            ", T=" + std::to_string(horizon) + ")";

    report.cases.push_back(make_case("additive/" + tag, expected_additive_objective(model, controls),
                                     exact_smoother_entropy_enumeration(hmm, controls), 1e-9));

    const double chain = smoother_trajectory_entropy(forward_backward_smoother(model, controls, obs));
    report.cases.push_back(
        make_case("chain-rule/" + tag, chain, trajectory_entropy_enumeration(hmm, controls, obs), 1e-9));

    double total = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      total += measurement_likelihood(model, hmm.initial(), controls.empty() ? 0 : controls[0], static_cast<double>(y));
    }
    report.cases.push_back(make_case("total-probability/" + tag, total, 1.0, 1e-10));
  }
  report.cases.push_back(make_case("gaussian-entropy-identity", gaussian_entropy(Eigen::Matrix3d::Identity()),
                                   1.5 * std::log(2.0 * std::numbers::pi * std::numbers::e), 1e-12));
  return report;
}

}  // namespace sacontrol

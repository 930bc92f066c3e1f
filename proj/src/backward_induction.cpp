#include "sacontrol/backward_induction.hpp"

#include <string>

#include "sacontrol/errors.hpp"
#include "sacontrol/parallel.hpp"

namespace sacontrol {

std::vector<double> q_values(const ControlledHmm& hmm, const SimplexGrid& grid, const MeasurementQuadrature& quad,
                             std::size_t point, const std::vector<double>& next_values,
                             const std::vector<double>& rewards) {
  const Belief& p = grid.point(point);
  std::vector<double> q(hmm.n_controls());
  for (std::size_t u = 0; u < hmm.n_controls(); ++u) {
    double future = 0.0;
    for (const auto& o : measurement_outcomes(hmm, p, u, quad)) {
      future += o.probability * next_values[grid.project(o.posterior)];
    }
    q[u] = rewards[u] + future;
  }
  return q;
}

DpSolution backward_induction(const ControlledHmm& hmm, const SimplexGrid& grid, const MeasurementQuadrature& quad,
                              std::size_t horizon, const RewardFunction& reward, std::size_t threads) {
  if (grid.n_states() != hmm.n_states()) throw ConfigError("grid and model disagree on the number of states");
  quad.check_matches(hmm.emissions());

  const std::size_t n_points = grid.size();
  const std::size_t n_controls = hmm.n_controls();

  // Stage rewards do not depend on t.
  std::vector<std::vector<double>> rewards(n_points, std::vector<double>(n_controls));
  parallel_for(
      n_points,
      [&](std::size_t k) {
        for (std::size_t u = 0; u < n_controls; ++u) rewards[k][u] = reward(grid.point(k), u);
      },
      threads);

  DpSolution sol;
  sol.values.horizon = horizon;
  sol.values.values.assign(horizon + 1, std::vector<double>(n_points, 0.0));
  sol.policy.n_controls = n_controls;
  sol.policy.controls.assign(horizon, std::vector<std::size_t>(n_points, 0));

  for (std::size_t t = horizon; t-- > 0;) {
    const auto& next = sol.values.values[t + 1];
    auto& current = sol.values.values[t];
    auto& choice = sol.policy.controls[t];
    parallel_for(
        n_points,
        [&](std::size_t k) {
          const auto q = q_values(hmm, grid, quad, k, next, rewards[k]);
          std::size_t best = 0;
          for (std::size_t u = 1; u < q.size(); ++u) {
            if (q[u] > q[best]) best = u;
          }
          current[k] = q[best];
          choice[k] = best;
        },
        threads);
  }
  return sol;
}

std::size_t policy_lookup(const GridPolicy& policy, const SimplexGrid& grid, const Belief& belief, std::size_t t) {
  if (t >= policy.controls.size()) {
    throw DomainError("policy stage " + std::to_string(t) + " out of range [0, " +
                      std::to_string(policy.controls.size()) + ")");
  }
  return policy.controls[t].at(grid.project(belief));
}

}  // namespace sacontrol

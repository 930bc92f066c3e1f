#include "sacontrol/cloud_sim.hpp"

#include <random>

#include "sacontrol/errors.hpp"
#include "sacontrol/hmm_filter.hpp"
#include "sacontrol/model_io.hpp"
#include "sacontrol/parallel.hpp"
#include "sacontrol/seeding.hpp"

namespace sacontrol {

using nlohmann::json;

namespace {

// Inverse-CDF draw; consumes exactly one uniform so the stream stays aligned
// across policies.
std::size_t sample_index(const Eigen::Ref<const Eigen::VectorXd>& probs, double uniform) {
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (uniform < cumulative) return static_cast<std::size_t>(i);
  }
  // Rounding left the uniform above the last partial sum; pick the last
  // state with mass.
  for (Eigen::Index i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return static_cast<std::size_t>(i);
  }
  return 0;
}

struct MeasurementStream {
  std::mt19937_64 engine;
  std::uniform_real_distribution<double> uniform{0.0, 1.0};
  std::normal_distribution<double> normal{0.0, 1.0};

  Observation draw(const EmissionModel& emissions, std::size_t state) {
    if (const auto* d = emissions.discrete()) {
      return static_cast<double>(sample_index(d->likelihood.row(static_cast<Eigen::Index>(state)).transpose(),
                                              uniform(engine)));
    }
    const auto* g = emissions.gaussian();
    return g->means[state] + g->std_dev * normal(engine);
  }
};

}  // namespace

StageCost CloudScenario::stage_cost() const {
  if (cost.size() == 0) return {};
  return [table = cost](std::size_t x, std::size_t u) {
    return table(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(u));
  };
}

CloudScenario default_cloud_scenario() {
  Eigen::MatrixXd a1(3, 3), a2(3, 3), a3(3, 3);
  a1 << 0.8, 0.8, 0.1,
        0.1, 0.1, 0.8,
        0.1, 0.1, 0.1;
  a2 << 0.1, 0.1, 0.1,
        0.8, 0.1, 0.1,
        0.1, 0.8, 0.8;
  a3 << 0.9, 0.05, 0.05,
        0.05, 0.9, 0.05,
        0.05, 0.05, 0.9;
  ControlledHmm hmm({a1, a2, a3}, EmissionModel(GaussianEmission{{1.0, 3.0, 5.0}, 1.0}), Belief::uniform(3));
  return CloudScenario{std::move(hmm), 10, 0.0, 200, {}};
}

json cloud_scenario_to_json(const CloudScenario& s) {
  json doc{{"model", hmm_to_json(s.hmm)}, {"horizon", s.horizon}, {"gamma", s.gamma}, {"n_runs", s.n_runs}};
  if (s.cost.size() != 0) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < s.cost.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index u = 0; u < s.cost.cols(); ++u) row.push_back(s.cost(i, u));
      rows.push_back(std::move(row));
    }
    doc["cost"] = std::move(rows);
  }
  return doc;
}

CloudScenario cloud_scenario_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("model")) throw ConfigError("cloud scenario is missing 'model'");
  CloudScenario s{hmm_from_json(doc.at("model")), 10, 0.0, 200, {}};
  try {
    s.horizon = doc.value("horizon", s.horizon);
    s.gamma = doc.value("gamma", s.gamma);
    s.n_runs = doc.value("n_runs", s.n_runs);
    if (doc.contains("cost")) {
      const auto rows = doc.at("cost").get<std::vector<std::vector<double>>>();
      if (rows.size() != s.hmm.n_states()) throw ConfigError("'cost' needs one row per state");
      s.cost.resize(static_cast<Eigen::Index>(s.hmm.n_states()), static_cast<Eigen::Index>(s.hmm.n_controls()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != s.hmm.n_controls()) throw ConfigError("'cost' needs one column per control");
        for (std::size_t u = 0; u < rows[i].size(); ++u) {
          if (!(rows[i][u] >= 0.0)) throw ConfigError("'cost' entries must be nonnegative");
          s.cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(u)) = rows[i][u];
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed cloud scenario: ") + e.what());
  }
  if (s.gamma < 0.0) throw ConfigError("gamma must be nonnegative");
  return s;
}

RewardFunction make_reward(const CloudScenario& scenario, RewardKind kind, const MeasurementQuadrature& quad) {
  if (kind == RewardKind::kSmoothingAverse) {
    return [&hmm = scenario.hmm, cost = scenario.stage_cost(), gamma = scenario.gamma, &quad](const Belief& b,
                                                                                          std::size_t u) {
      return expected_stage_reward(hmm, b, u, cost, gamma, quad);
    };
  }
  return [&hmm = scenario.hmm, cost = scenario.stage_cost(), gamma = scenario.gamma, &quad](const Belief& b,
                                                                                        std::size_t u) {
    double r = min_info_gain_stage_reward(hmm, b, u, quad);
    if (gamma > 0.0 && cost) {
      for (std::size_t i = 0; i < b.size(); ++i) r -= gamma * b[i] * cost(i, u);
    }
    return r;
  };
}

PolicyHeader scenario_header(const CloudScenario& scenario, const MeasurementQuadrature& quad,
                             std::uint64_t divisions, RewardKind kind) {
  PolicyHeader h;
  h.n_states = scenario.hmm.n_states();
  h.divisions = divisions;
  h.horizon = scenario.horizon;
  h.n_controls = scenario.hmm.n_controls();
  h.reward_kind = kind;
  h.quadrature = quad.spec();
  h.gamma = scenario.gamma;
  return h;
}

BeliefPolicy make_grid_policy(std::shared_ptr<const SimplexGrid> grid, std::shared_ptr<const GridPolicy> policy) {
  return [grid = std::move(grid), policy = std::move(policy)](const Belief& b, std::size_t t) {
    return policy_lookup(*policy, *grid, b, t);
  };
}

EpisodeRecord run_episode(const CloudScenario& scenario, const BeliefPolicy& policy, std::uint64_t seed) {
  const auto& hmm = scenario.hmm;
  const std::size_t T = scenario.horizon;
  std::mt19937_64 state_engine(derive_seed(seed, 0));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  MeasurementStream measurements{std::mt19937_64(derive_seed(seed, 1))};

  EpisodeRecord rec;
  rec.seed = seed;
  rec.states.push_back(sample_index(hmm.initial().probs(), uniform(state_engine)));
  rec.observations.push_back(measurements.draw(hmm.emissions(), rec.states[0]));
  rec.beliefs.push_back(measurement_update(hmm, hmm.initial(), rec.observations[0]));
  rec.stage_rewards.push_back(discrete_entropy(rec.beliefs[0]));

  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t u = policy(rec.beliefs[t], t);
    hmm.check_control(u);
    const auto column = hmm.transition(u).col(static_cast<Eigen::Index>(rec.states[t]));
    rec.controls.push_back(u);
    rec.states.push_back(sample_index(column, uniform(state_engine)));
    rec.observations.push_back(measurements.draw(hmm.emissions(), rec.states.back()));
    rec.stage_rewards.push_back(stage_reward_tilde(hmm, rec.beliefs[t], u, rec.observations.back()).r_tilde);
    rec.beliefs.push_back(filter_update(hmm, rec.beliefs[t], u, rec.observations.back()));
  }

  for (double r : rec.stage_rewards) rec.realised_objective += r;
  rec.smoothed = forward_backward_smoother(hmm, rec.controls, rec.observations);
  rec.trajectory_entropy = smoother_trajectory_entropy(rec.smoothed);
  if (T > 0) {
    rec.map_error_rate = map_error_rate(rec.smoothed, rec.states, 1, T + 1);
    for (std::size_t t = 1; t <= T; ++t) {
      if (rec.smoothed.marginals[t].argmax() != rec.states[t]) ++rec.map_errors;
    }
  }
  return rec;
}

json episode_summary(const EpisodeRecord& r, const std::string& policy_name, std::size_t index) {
  json beliefs = json::array();
  for (const auto& b : r.beliefs) beliefs.push_back(b.to_vector());
  return {{"policy", policy_name},
          {"episode", index},
          {"seed", r.seed},
          {"states", r.states},
          {"controls", r.controls},
          {"observations", r.observations},
          {"beliefs", std::move(beliefs)},
          {"stage_rewards", r.stage_rewards},
          {"realised_objective", r.realised_objective},
          {"trajectory_entropy", r.trajectory_entropy},
          {"map_errors", r.map_errors},
          {"map_error_rate", r.map_error_rate}};
}

std::vector<PolicyEvaluation> evaluate_policies(const CloudScenario& scenario, const std::vector<NamedPolicy>& policies,
                                                std::uint64_t master_seed, std::size_t n_runs, std::size_t threads) {
  if (n_runs == 0) throw ConfigError("evaluation needs at least one run");
  std::vector<PolicyEvaluation> out;
  for (const auto& p : policies) {
    PolicyEvaluation eval;
    eval.episodes.resize(n_runs);
    parallel_for(
        n_runs, [&](std::size_t i) { eval.episodes[i] = run_episode(scenario, p.policy, derive_seed(master_seed, i)); },
        threads);
    double entropy = 0.0;
    double map_error = 0.0;
    for (const auto& e : eval.episodes) {
      entropy += e.trajectory_entropy;
      map_error += e.map_error_rate;
    }
    eval.metrics = {p.name, entropy / static_cast<double>(n_runs), map_error / static_cast<double>(n_runs), n_runs,
                    master_seed};
    out.push_back(std::move(eval));
  }
  return out;
}

}  // namespace sacontrol

#include "sacontrol/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <locale>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sacontrol/backward_induction.hpp"
#include "sacontrol/cloud_sim.hpp"
#include "sacontrol/errors.hpp"
#include "sacontrol/model_io.hpp"
#include "sacontrol/policy_artifact.hpp"
#include "sacontrol/quadrature.hpp"
#include "sacontrol/robot_scenario.hpp"
#include "sacontrol/robot_sim.hpp"
#include "sacontrol/verify_suite.hpp"

namespace sacontrol::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << value;
  return os.str();
}

namespace {

std::string scenario_source(const std::string& path) { return path.empty() ? "builtin" : path; }

CloudScenario load_cloud_scenario(const std::string& path) {
  if (path.empty()) return default_cloud_scenario();
  return cloud_scenario_from_json(read_json_file(path));
}

RobotScenario load_robot_scenario(const std::string& path) {
  if (path.empty()) return default_robot_scenario();
  return robot_scenario_from_json(read_json_file(path));
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.imbue(std::locale::classic());
  return out;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_manifest(const fs::path& dir, const std::string& command, json config, const std::vector<std::string>& outputs) {
  write_json_file(dir / "manifest.json", {{"command", command}, {"config", std::move(config)}, {"outputs", outputs}});
}

MeasurementQuadrature quadrature_for(const CloudScenario& scenario, const PolicyHeader& header) {
  const auto cells = header.quadrature.value("cells", MeasurementQuadrature::kDefaultGaussianCells);
  return MeasurementQuadrature::for_model(scenario.hmm.emissions(), cells);
}

}  // namespace

void cmd_solve(const SolveConfig& config, std::ostream& log) {
  const auto scenario = load_cloud_scenario(config.scenario);
  const auto quad = MeasurementQuadrature::for_model(scenario.hmm.emissions(), config.cells);
  const auto grid = SimplexGrid::build(scenario.hmm.n_states(), config.resolution, config.max_points);
  prepare_dir(config.out);

  const auto start = std::chrono::steady_clock::now();
  const auto solution =
      backward_induction(scenario.hmm, grid, quad, scenario.horizon, make_reward(scenario, config.reward, quad),
                         config.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  PolicyArtifact artifact{scenario_header(scenario, quad, grid.divisions(), config.reward), solution.values,
                          solution.policy};
  write_artifact(config.out / "policy.json", artifact);

  const std::size_t p0 = grid.project(scenario.hmm.initial());
  const double j0 = solution.values.values[0][p0];
  write_json_file(config.out / "solve_report.json", {{"reward", to_string(config.reward)},
                                                     {"grid_points", grid.size()},
                                                     {"divisions", grid.divisions()},
                                                     {"horizon", scenario.horizon},
                                                     {"initial_belief", scenario.hmm.initial().to_vector()},
                                                     {"initial_grid_point", grid.point(p0).to_vector()},
                                                     {"j0_initial", j0},
                                                     {"wall_time_s", wall}});
  write_manifest(config.out, "solve",
                 {{"scenario_source", scenario_source(config.scenario)},
                  {"scenario", cloud_scenario_to_json(scenario)},
                  {"reward", to_string(config.reward)},
                  {"resolution", config.resolution},
                  {"cells", config.cells},
                  {"max_points", config.max_points},
                  {"threads", config.threads}},
                 {"policy.json", "solve_report.json"});

  log << "solved " << to_string(config.reward) << ": " << grid.size() << " grid points, T=" << scenario.horizon
      << ", J0(initial)=" << format_double(j0) << ", " << std::fixed << std::setprecision(2) << wall << " s\n"
      << std::defaultfloat;
}

void cmd_run_cloud(const RunCloudConfig& config, std::ostream& log) {
  if (config.policies.empty()) throw ConfigError("run-cloud needs at least one --policy artifact");
  const auto scenario = load_cloud_scenario(config.scenario);
  const std::size_t runs = config.runs.value_or(scenario.n_runs);

  std::vector<NamedPolicy> policies;
  json policy_list = json::array();
  for (const auto& path : config.policies) {
    auto artifact = std::make_shared<PolicyArtifact>(read_artifact(path));
    const auto quad = quadrature_for(scenario, artifact->header);
    check_header_matches(artifact->header,
                         scenario_header(scenario, quad, artifact->header.divisions, artifact->header.reward_kind));
    auto grid = std::make_shared<const SimplexGrid>(SimplexGrid::build(
        scenario.hmm.n_states(), 1.0 / static_cast<double>(artifact->header.divisions), UINT64_MAX));
    std::string name = to_string(artifact->header.reward_kind);
    std::size_t same = 0;
    for (const auto& p : policies) same += p.name.rfind(name, 0) == 0 ? 1 : 0;
    if (same > 0) name += "#" + std::to_string(same + 1);
    policies.push_back(
        {name, make_grid_policy(grid, std::shared_ptr<const GridPolicy>(artifact, &artifact->policy))});
    policy_list.push_back({{"name", name}, {"path", path.string()}});
  }

  const auto evals = evaluate_policies(scenario, policies, config.seed, runs, config.threads);
  prepare_dir(config.out);

  auto episodes = open_output(config.out / "episodes.jsonl");
  for (const auto& e : evals) {
    for (std::size_t i = 0; i < e.episodes.size(); ++i) {
      episodes << episode_summary(e.episodes[i], e.metrics.policy, i).dump() << '\n';
    }
  }
  auto metrics = open_output(config.out / "metrics.csv");
  metrics << "policy,mean_entropy_nats,map_error,n_runs,seed\n";
  for (const auto& e : evals) {
    const auto& m = e.metrics;
    metrics << m.policy << ',' << format_double(m.mean_entropy_nats) << ',' << format_double(m.map_error) << ','
            << m.n_runs << ',' << m.seed << '\n';
    log << m.policy << ": mean entropy " << format_double(m.mean_entropy_nats) << " nats, MAP error "
        << format_double(m.map_error) << " over " << m.n_runs << " runs\n";
  }
  write_manifest(config.out, "run-cloud",
                 {{"scenario_source", scenario_source(config.scenario)},
                  {"scenario", cloud_scenario_to_json(scenario)},
                  {"policies", policy_list},
                  {"runs", runs},
                  {"seed", config.seed},
                  {"seed_derivation", "episode i: splitmix64(seed ^ splitmix64(i))"},
                  {"threads", config.threads}},
                 {"episodes.jsonl", "metrics.csv"});
}

void cmd_run_robot(const RunRobotConfig& config, std::ostream& log) {
  auto scenario = load_robot_scenario(config.scenario);
  if (config.gamma) scenario.gamma = *config.gamma;
  scenario.validate();
  if (config.episodes == 0) throw ConfigError("run-robot needs at least one episode");

  const auto batch = run_navigation_batch(scenario, config.episodes, config.seed, config.threads);
  const auto stats = trajectory_stats(batch, scenario);
  prepare_dir(config.out);

  auto traj = open_output(config.out / "trajectories.csv");
  traj << "episode,t,x,y,heading,u2,h_post,h_pred,h_process\n";
  for (std::size_t e = 0; e < batch.size(); ++e) {
    const auto& r = batch[e];
    traj << e << ",0," << format_double(r.initial_pose.x) << ',' << format_double(r.initial_pose.y) << ','
         << format_double(r.initial_pose.heading) << ",,,,\n";
    for (std::size_t t = 0; t < r.steps.size(); ++t) {
      const auto& s = r.steps[t];
      traj << e << ',' << t + 1 << ',' << format_double(s.pose.x) << ',' << format_double(s.pose.y) << ','
           << format_double(s.pose.heading) << ',' << format_double(s.turn_rate) << ',' << format_double(s.h_post)
           << ',' << format_double(s.h_pred) << ',' << format_double(s.h_process) << '\n';
    }
  }

  auto path = open_output(config.out / "mean_path.csv");
  path << "t,mean_x,mean_y,std_x,std_y\n";
  for (std::size_t t = 0; t < stats.mean_path.size(); ++t) {
    path << t << ',' << format_double(stats.mean_path[t].x()) << ',' << format_double(stats.mean_path[t].y()) << ','
         << format_double(stats.std_path[t].x()) << ',' << format_double(stats.std_path[t].y()) << '\n';
  }

  auto summary = open_output(config.out / "stats.csv");
  summary << "gamma,episodes,seed,mean_min_landmark_distance,mean_final_goal_distance,goal_reached_fraction,"
             "mean_steps\n";
  summary << format_double(scenario.gamma) << ',' << batch.size() << ',' << config.seed << ','
          << format_double(stats.mean_min_landmark_distance) << ',' << format_double(stats.mean_final_goal_distance)
          << ',' << format_double(stats.goal_reached_fraction) << ',' << format_double(stats.mean_steps) << '\n';

  write_manifest(config.out, "run-robot",
                 {{"scenario_source", scenario_source(config.scenario)},
                  {"scenario", robot_scenario_to_json(scenario)},
                  {"episodes", config.episodes},
                  {"seed", config.seed},
                  {"seed_derivation", "episode i: splitmix64(seed ^ splitmix64(i))"},
                  {"threads", config.threads}},
                 {"trajectories.csv", "mean_path.csv", "stats.csv"});

  log << "gamma " << format_double(scenario.gamma) << ": mean min landmark distance "
      << format_double(stats.mean_min_landmark_distance) << " m, mean final goal distance "
      << format_double(stats.mean_final_goal_distance) << " m, reached " << format_double(stats.goal_reached_fraction)
      << '\n';
}

int cmd_verify(const VerifyConfig& config, std::ostream& log) {
  const auto report =
      run_verify_suite(config.corrupt_transition ? FaultInjection::kCorruptTransition : FaultInjection::kNone);
  json cases = json::array();
  for (const auto& c : report.cases) {
    log << (c.passed ? "PASS " : "FAIL ") << c.name << "  |diff|=" << format_double(c.discrepancy)
        << "  tol=" << format_double(c.tolerance) << '\n';
    cases.push_back({{"name", c.name}, {"discrepancy", c.discrepancy}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  const bool ok = report.passed();
  log << (ok ? "verify: all " : "verify: FAILED, ") << report.cases.size() << " cases checked\n";
  if (config.out) {
    prepare_dir(*config.out);
    write_json_file(*config.out / "verify_report.json", {{"passed", ok}, {"cases", cases}});
    write_manifest(*config.out, "verify", {{"corrupt_transition", config.corrupt_transition}}, {"verify_report.json"});
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

void cmd_grid_info(const GridInfoConfig& config, std::ostream& log) {
  if (config.n_states < 1) throw ConfigError("grid needs at least one state");
  const auto divisions = SimplexGrid::divisions_for(config.resolution);
  const auto points = SimplexGrid::count_points(config.n_states, divisions);
  const json info = {{"n_states", config.n_states}, {"resolution", config.resolution}, {"divisions", divisions},
                     {"points", points},         {"max_points", config.max_points}, {"within_guard", points <= config.max_points}};
  log << info.dump(2) << '\n';
  if (points > config.max_points) {
    throw SizeGuardError("grid has " + std::to_string(points) + " points, guard is " +
                         std::to_string(config.max_points));
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothing-averse control: HMM dynamic programming and robot receding-horizon simulation"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory")->envname("SACONTROL_OUT_DIR")->capture_default_str();
  };
  std::size_t threads = 0;
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads (0: SACONTROL_THREADS or hardware)");
  };

  SolveConfig solve;
  std::string reward = "smoothing-averse";
  auto* s = app.add_subcommand("solve", "Backward induction on the belief grid; writes policy.json");
  s->add_option("--scenario", solve.scenario, "Cloud scenario JSON (default: built-in three-state example)");
  s->add_option("--reward", reward, "smoothing-averse | min-info-gain")
      ->check(CLI::IsMember({"smoothing-averse", "min-info-gain"}))
      ->capture_default_str();
  s->add_option("--resolution", solve.resolution, "Grid resolution 1/m")->capture_default_str();
  s->add_option("--cells", solve.cells, "Interior quadrature cells for Gaussian emissions")->capture_default_str();
  s->add_option("--max-points", solve.max_points, "Grid size guard")->capture_default_str();
  add_out(s);
  add_threads(s);

  RunCloudConfig cloud;
  std::size_t cloud_runs = 0;
  std::vector<std::string> policy_paths;
  auto* c = app.add_subcommand("run-cloud", "Simulate solved policies with paired seeds");
  c->add_option("--scenario", cloud.scenario, "Cloud scenario JSON");
  c->add_option("--policy", policy_paths, "Policy artifact (repeatable)")->required();
  auto* runs_opt = c->add_option("--runs", cloud_runs, "Episodes per policy (default: scenario n_runs)");
  c->add_option("--seed", cloud.seed, "Master seed")->capture_default_str();
  add_out(c);
  add_threads(c);

  RunRobotConfig robot;
  double gamma = 0.0;
  auto* r = app.add_subcommand("run-robot", "Receding-horizon robot navigation batch");
  r->add_option("--scenario", robot.scenario, "Robot scenario JSON (default: built-in map)");
  auto* gamma_opt = r->add_option("--gamma", gamma, "Goal-distance weight (default: scenario gamma)");
  r->add_option("--episodes", robot.episodes, "Number of episodes")->capture_default_str();
  r->add_option("--seed", robot.seed, "Master seed")->capture_default_str();
  add_out(r);
  add_threads(r);

  VerifyConfig verify;
  std::string verify_out;
  auto* v = app.add_subcommand("verify", "Run the built-in oracle identities");
  v->add_flag("--corrupt-transition", verify.corrupt_transition, "Negative control: perturb a transition matrix");
  v->add_option("--out", verify_out, "Also write verify_report.json here");

  GridInfoConfig grid;
  auto* g = app.add_subcommand("grid-info", "Grid size for a state count and resolution");
  g->add_option("--states", grid.n_states, "Number of states")->capture_default_str();
  g->add_option("--resolution", grid.resolution, "Grid resolution 1/m")->capture_default_str();
  g->add_option("--max-points", grid.max_points, "Grid size guard")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (s->parsed()) {
      solve.reward = reward_kind_from_string(reward);
      solve.out = out_dir;
      solve.threads = threads;
      cmd_solve(solve, out);
    } else if (c->parsed()) {
      cloud.policies.assign(policy_paths.begin(), policy_paths.end());
      if (runs_opt->count() > 0) cloud.runs = cloud_runs;
      cloud.out = out_dir;
      cloud.threads = threads;
      cmd_run_cloud(cloud, out);
    } else if (r->parsed()) {
      if (gamma_opt->count() > 0) robot.gamma = gamma;
      robot.out = out_dir;
      robot.threads = threads;
      cmd_run_robot(robot, out);
    } else if (v->parsed()) {
      if (!verify_out.empty()) verify.out = verify_out;
      return cmd_verify(verify, out);
    } else if (g->parsed()) {
      cmd_grid_info(grid, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SizeGuardError& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace sacontrol::cli

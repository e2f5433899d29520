// Command-line front end: simulate agents on scenario files, recompute
// metrics from stored traces, and self-check the core properties.
//
// Exit codes: 0 success, 1 property violation, 2 configuration error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcplan/harness.hpp"

namespace {

using namespace mcplan;

Preference parse_prefer(const std::string& name) {
  if (name == "right") return Preference::Right;
  if (name == "random") return Preference::SeededRandom;
  return Preference::Left;
}

struct RunSummary {
  int index = 0;
  Metrics metrics;
  bool stopped = false;
  int violations = 0;
};

int cmd_run(const std::string& scenario_path, const std::string& config_path,
            const std::string& agent_name, std::uint64_t seed, double duration,
            int runs, const std::string& out_dir, const std::string& prefer,
            const std::string& start) {
  ScenarioSpec scenario = load_scenario(scenario_path);
  if (!config_path.empty())
    scenario.config = apply_config_file(config_path, scenario.config);

  const AgentKind agent =
      agent_name == "baseline" ? AgentKind::Baseline : AgentKind::Mc;

  auto one_run = [&](int i) {
    RunOptions opts;
    opts.agent = agent;
    opts.seed = seed + static_cast<std::uint64_t>(i);
    opts.duration_s = duration;
    opts.prefer = parse_prefer(prefer);
    opts.start_pose = start;
    RunTrace trace = run_scenario(scenario, opts);
    const Metrics metrics = compute_metrics(trace);
    std::string dir = out_dir;
    if (runs > 1) {
      char sub[16];
      std::snprintf(sub, sizeof sub, "run_%03d", i);
      dir += std::string("/") + sub;
    }
    export_run(trace, metrics, dir);
    return RunSummary{i, metrics, trace.stopped, trace.safe_zone_violations};
  };

  std::vector<RunSummary> summaries(static_cast<std::size_t>(runs));
  if (runs > 1) {
    std::vector<std::future<RunSummary>> futures;
    futures.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i)
      futures.push_back(std::async(std::launch::async, one_run, i));
    for (int i = 0; i < runs; ++i)
      summaries[static_cast<std::size_t>(i)] = futures[static_cast<std::size_t>(i)].get();
  } else {
    summaries[0] = one_run(0);
  }

  bool violation = false;
  for (const auto& s : summaries) {
    std::printf(
        "run %d: length=%.3f in_culdesac_length=%.3f in_culdesac_time=%.1f "
        "visits=%d collisions=%d replans=%d%s\n",
        s.index, s.metrics.trajectory_length, s.metrics.in_culdesac_length,
        s.metrics.in_culdesac_time, s.metrics.culdesac_visits,
        s.metrics.collisions, s.metrics.latency_overall.count,
        s.stopped ? " [stopped]" : "");
    if (agent == AgentKind::Mc &&
        (s.metrics.collisions > 0 || s.violations > 0))
      violation = true;
  }
  return violation ? 1 : 0;
}

int cmd_replay(const std::string& trace_path) {
  const RunTrace trace = load_trace(trace_path);
  const Metrics m = compute_metrics(trace);
  std::printf("{\n");
  std::printf("  \"trajectory_length\": %.12g,\n", m.trajectory_length);
  std::printf("  \"in_culdesac_length\": %.12g,\n", m.in_culdesac_length);
  std::printf("  \"in_culdesac_time\": %.12g,\n", m.in_culdesac_time);
  std::printf("  \"culdesac_visits\": %d,\n", m.culdesac_visits);
  std::printf("  \"collisions\": %d,\n", m.collisions);
  std::printf("  \"replans\": %d\n", m.latency_overall.count);
  std::printf("}\n");
  return 0;
}

// --- check: fast property suite ------------------------------------------

bool report(const char* name, bool ok) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
  return ok;
}

PointCloud random_cloud(std::mt19937_64& rng, bool with_look) {
  std::uniform_int_distribution<int> count(0, 50);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  PointCloud cloud;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const Observation o{coord(rng), coord(rng)};
    if (o.x != 0.0 || o.y != 0.0) cloud.observations.push_back(o);
  }
  if (with_look) {
    std::uniform_real_distribution<double> lx(0.47, 1.0);
    std::uniform_real_distribution<double> ly(-0.3, 0.3);
    cloud.observations.push_back(Observation{lx(rng), ly(rng)});
  }
  return cloud;
}

bool check_partitions(std::mt19937_64& rng) {
  const SafetyConfig cfg;
  for (int i = 0; i < 2000; ++i) {
    const PointCloud cloud = random_cloud(rng, false);
    const auto safe = partition_safe(cloud, cfg);
    const auto shield = partition_shield(cloud, cfg);
    const auto look = partition_look(cloud, cfg, cfg.d_look);
    for (const auto& o : shield) {
      for (const auto& s : safe)
        if (s == o) return false;
      for (const auto& l : look)
        if (l == o) return false;
    }
    for (const auto& o : look)
      for (const auto& s : safe)
        if (s == o) return false;
  }
  return true;
}

bool check_plan_shape(std::mt19937_64& rng) {
  const SafetyConfig cfg;
  for (int i = 0; i < 1000; ++i) {
    PointCloud cloud = random_cloud(rng, true);
    const auto look = partition_look(cloud, cfg, cfg.d_look);
    const auto d_plus = nearest_front(look);
    if (!d_plus.has_value()) continue;
    const PlanResult result = plan_generate({cloud, *d_plus, cfg});
    if (!result.plan.has_value()) {
      if (result.branch != 4) return false;
      continue;
    }
    const auto& tasks = result.plan->tasks;
    if (tasks.size() < 2 || tasks.size() > 4) return false;
    if (tasks.back() != TaskKind::T0) return false;
    if (static_cast<int>(tasks.size()) != result.branch) return false;
    for (std::size_t k = 1; k < tasks.size(); ++k) {
      const bool flip = (tasks[k - 1] == TaskKind::TL && tasks[k] == TaskKind::TR) ||
                        (tasks[k - 1] == TaskKind::TR && tasks[k] == TaskKind::TL);
      if (flip) return false;
    }
  }
  return true;
}

bool check_raycast(std::mt19937_64& rng) {
  const WorldModel world = make_random_room(7);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(-3.14, 3.14);
  for (int i = 0; i < 1000; ++i) {
    RobotState robot{pos(rng), pos(rng), ang(rng)};
    const PointCloud cloud = raycast_scan(world, robot, 90, 6.0);
    for (const auto& o : cloud.observations) {
      const double wx = robot.x + o.x * std::cos(robot.theta) -
                        o.y * std::sin(robot.theta);
      const double wy = robot.y + o.x * std::sin(robot.theta) +
                        o.y * std::cos(robot.theta);
      double best = 1e9;
      for (const auto& seg : world.segments)
        best = std::min(best, point_segment_distance(wx, wy, seg));
      if (best > 1e-9) return false;
    }
  }
  return true;
}

bool check_loop_batch() {
  RunConfig config;
  config.noise.epsilon_long = 0.03;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WorldModel world = make_random_room(seed * 101);
    RunOptions opts;
    opts.agent = AgentKind::Mc;
    opts.seed = seed;
    opts.duration_s = 60.0;
    const RunTrace trace = run_loop(world, RobotState{}, config, opts);
    if (!trace.collisions.empty()) return false;
    if (trace.safe_zone_violations != 0) return false;
    TaskKind prev = TaskKind::T0;
    for (const auto& e : trace.task_events) {
      const bool flip = (prev == TaskKind::TL && e.to == TaskKind::TR) ||
                        (prev == TaskKind::TR && e.to == TaskKind::TL);
      if (flip) return false;
      prev = e.to;
    }
  }
  return true;
}

bool check_determinism() {
  const WorldModel world = make_random_room(404);
  RunConfig config;
  config.noise.epsilon_long = 0.03;
  RunOptions opts;
  opts.agent = AgentKind::Mc;
  opts.seed = 17;
  opts.duration_s = 30.0;
  const RunTrace a = run_loop(world, RobotState{}, config, opts);
  const RunTrace b = run_loop(world, RobotState{}, config, opts);
  if (a.poses.size() != b.poses.size()) return false;
  for (std::size_t i = 0; i < a.poses.size(); ++i) {
    if (a.poses[i].x != b.poses[i].x || a.poses[i].y != b.poses[i].y ||
        a.poses[i].theta != b.poses[i].theta)
      return false;
  }
  return a.plan_events.size() == b.plan_events.size();
}

bool check_search_examples() {
  const SafetyConfig cfg;
  const Dts dts = build_dts(cfg);
  const Nfa nfa = Nfa::negated_plan_property();

  // Open on both sides: 2-task plan through s3 under left preference.
  PartitionSet open;
  const Valuation open_val = valuate(dts, open, cfg);
  const auto open_path = product_search(dts, open_val, nfa, {3, 4});
  if (!open_path.has_value()) return false;
  const Plan open_plan = extract_plan(*open_path);
  if (open_plan.tasks != std::vector<TaskKind>{TaskKind::TL, TaskKind::T0})
    return false;

  // Boxed in: the turn-around.
  PartitionSet boxed;
  boxed.left.members = {Observation{0.0, 0.5}};
  boxed.right.members = {Observation{0.0, -0.5}};
  boxed.boxed.pairs = {{boxed.left.members[0], boxed.right.members[0]}};
  const Valuation boxed_val = valuate(dts, boxed, cfg);
  const auto boxed_path = product_search(dts, boxed_val, nfa, {14});
  if (!boxed_path.has_value()) return false;
  if (extract_plan(*boxed_path).tasks !=
      std::vector<TaskKind>{TaskKind::TL, TaskKind::TL, TaskKind::T0})
    return false;

  // Empty terminal set: no plan.
  if (product_search(dts, open_val, nfa, {}).has_value()) return false;
  return true;
}

int cmd_check(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  bool ok = true;
  ok &= report("partition disjointness", check_partitions(rng));
  ok &= report("plan shape and branch agreement", check_plan_shape(rng));
  ok &= report("search worked examples", check_search_examples());
  ok &= report("raycast soundness", check_raycast(rng));
  ok &= report("closed-loop batch (collisions, safe zone, alternation)",
               check_loop_batch());
  ok &= report("run determinism", check_determinism());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-checking reactive planner simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Simulate an agent on a scenario");
  std::string scenario_path, config_path, start;
  std::string agent = "mc", prefer = "left", out_dir = "out";
  std::uint64_t seed = 0;
  double duration = 0.0;
  int runs = 1;
  run->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--agent", agent, "Agent kind")
      ->check(CLI::IsMember({"baseline", "mc"}));
  run->add_option("--seed", seed, "Base seed; run i uses seed+i");
  run->add_option("--duration", duration,
                  "Seconds of simulated time (default: scenario value)");
  run->add_option("--runs", runs, "Number of seeded runs")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--prefer", prefer, "Branch preference")
      ->check(CLI::IsMember({"left", "right", "random"}));
  run->add_option("--config", config_path, "Config overrides JSON")
      ->check(CLI::ExistingFile);
  run->add_option("--start", start, "Start pose name (default: first)");

  auto* replay = app.add_subcommand("replay", "Recompute metrics from a trace");
  std::string trace_path;
  replay->add_option("--trace", trace_path, "trace.jsonl file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "Run the property self-checks");
  std::uint64_t check_seed = 1;
  check->add_option("--seed", check_seed, "Property suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Fold CLI11's per-error exit codes into the documented contract:
    // help/version stay 0, everything else is a configuration error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(scenario_path, config_path, agent, seed, duration, runs,
                     out_dir, prefer, start);
    if (replay->parsed()) return cmd_replay(trace_path);
    if (check->parsed()) return cmd_check(check_seed);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

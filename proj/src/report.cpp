#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "json.hpp"
#include "mcplan/harness.hpp"

namespace mcplan {

using nlohmann::json;

namespace {

void accumulate(LatencyStats& stats, double ms) {
  if (stats.count == 0) {
    stats.min_ms = stats.max_ms = stats.mean_ms = ms;
    stats.count = 1;
    return;
  }
  stats.min_ms = std::min(stats.min_ms, ms);
  stats.max_ms = std::max(stats.max_ms, ms);
  stats.mean_ms += (ms - stats.mean_ms) / (stats.count + 1);
  ++stats.count;
}

json config_to_json(const RunConfig& c) {
  return json{
      {"safety",
       {{"d_safe", c.safety.d_safe},
        {"v", c.safety.v},
        {"dt", c.safety.dt},
        {"tol", c.safety.tol},
        {"L", c.safety.L},
        {"d_max", c.safety.d_max},
        {"d_min", c.safety.d_min},
        {"beta", c.safety.beta},
        {"d_look", c.safety.d_look}}},
      {"noise",
       {{"epsilon_long", c.noise.epsilon_long},
        {"range_noise", c.noise.range_noise},
        {"veer", c.noise.veer}}},
      {"sim",
       {{"n_beams", c.sim.n_beams},
        {"max_range", c.sim.max_range},
        {"omega", c.sim.omega},
        {"footprint_radius", c.sim.footprint_radius}}}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  const auto& s = j.at("safety");
  c.safety.d_safe = s.at("d_safe");
  c.safety.v = s.at("v");
  c.safety.dt = s.at("dt");
  c.safety.tol = s.at("tol");
  c.safety.L = s.at("L");
  c.safety.d_max = s.at("d_max");
  c.safety.d_min = s.at("d_min");
  c.safety.beta = s.at("beta");
  c.safety.d_look = s.at("d_look");
  const auto& n = j.at("noise");
  c.noise.epsilon_long = n.at("epsilon_long");
  c.noise.range_noise = n.at("range_noise");
  c.noise.veer = n.at("veer");
  const auto& m = j.at("sim");
  c.sim.n_beams = m.at("n_beams");
  c.sim.max_range = m.at("max_range");
  c.sim.omega = m.at("omega");
  c.sim.footprint_radius = m.at("footprint_radius");
  return c;
}

json observations_to_json(const std::vector<Observation>& obs) {
  json arr = json::array();
  for (const auto& o : obs) arr.push_back(json::array({o.x, o.y}));
  return arr;
}

json metrics_to_json(const Metrics& m, const RunTrace& trace) {
  json latency{{"overall",
                {{"count", m.latency_overall.count},
                 {"min_ms", m.latency_overall.min_ms},
                 {"max_ms", m.latency_overall.max_ms},
                 {"mean_ms", m.latency_overall.mean_ms}}}};
  json by_len = json::object();
  for (const auto& [len, stats] : m.latency_by_plan_len)
    by_len[std::to_string(len)] = {{"count", stats.count},
                                   {"min_ms", stats.min_ms},
                                   {"max_ms", stats.max_ms},
                                   {"mean_ms", stats.mean_ms}};
  latency["by_plan_len"] = by_len;
  return json{{"trajectory_length", m.trajectory_length},
              {"in_culdesac_length", m.in_culdesac_length},
              {"in_culdesac_time", m.in_culdesac_time},
              {"culdesac_visits", m.culdesac_visits},
              {"collisions", m.collisions},
              {"stopped", trace.stopped},
              {"stop_reason", trace.stop_reason},
              {"safe_zone_violations", trace.safe_zone_violations},
              {"latency", latency}};
}

}  // namespace

Metrics compute_metrics(const RunTrace& trace) {
  Metrics m;
  const CutoffLine& cutoff = trace.cutoff;
  const double dt = trace.config.safety.dt;

  bool prev_inside = false;
  for (std::size_t i = 0; i < trace.poses.size(); ++i) {
    const Pose& p = trace.poses[i];
    const bool inside = cutoff.valid && cutoff.inside(p.x, p.y);
    if (inside && (i == 0 || !prev_inside)) ++m.culdesac_visits;
    if (i + 1 < trace.poses.size()) {
      const Pose& q = trace.poses[i + 1];
      const double len = std::hypot(q.x - p.x, q.y - p.y);
      m.trajectory_length += len;
      if (inside) {
        m.in_culdesac_length += len;  // segment attributed to its start pose
        m.in_culdesac_time += dt;
      }
    }
    prev_inside = inside;
  }

  m.collisions = static_cast<int>(trace.collisions.size());
  for (const auto& ev : trace.plan_events) {
    const int len = ev.result.plan.has_value()
                        ? static_cast<int>(ev.result.plan->tasks.size())
                        : 0;
    accumulate(m.latency_by_plan_len[len], ev.result.latency_ms);
    accumulate(m.latency_overall, ev.result.latency_ms);
  }
  return m;
}

void export_run(const RunTrace& trace, const Metrics& metrics,
                const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  {
    std::ofstream out(dir / "trace.jsonl");
    json header{{"type", "header"},
                {"scenario", trace.scenario_name},
                {"agent", to_string(trace.agent)},
                {"seed", trace.seed},
                {"config", config_to_json(trace.config)},
                {"stopped", trace.stopped},
                {"stop_reason", trace.stop_reason},
                {"safe_zone_violations", trace.safe_zone_violations}};
    if (trace.cutoff.valid)
      header["cutoff"] = {
          {"line", {trace.cutoff.x1, trace.cutoff.y1, trace.cutoff.x2,
                    trace.cutoff.y2}},
          {"inside", trace.cutoff.inside_sign > 0 ? "positive" : "negative"}};
    out << header.dump() << '\n';

    for (const auto& p : trace.poses)
      out << json{{"type", "pose"}, {"t", p.t}, {"x", p.x}, {"y", p.y},
                  {"theta", p.theta}}
                 .dump()
          << '\n';
    for (const auto& e : trace.task_events)
      out << json{{"type", "task"},
                  {"t", e.t},
                  {"from", to_string(e.from)},
                  {"to", to_string(e.to)},
                  {"reason", e.reason}}
                 .dump()
          << '\n';
    for (const auto& e : trace.plan_events) {
      const PlanResult& r = e.result;
      json plan = nullptr;
      if (r.plan.has_value()) {
        plan = json::array();
        for (const TaskKind k : r.plan->tasks) plan.push_back(to_string(k));
      }
      json path = nullptr;
      if (r.path.has_value()) {
        path = json::array();
        for (const auto& [s, q] : r.path->nodes) path.push_back(s);
      }
      out << json{{"type", "plan"},
                  {"t", e.t},
                  {"latency_ms", r.latency_ms},
                  {"branch", r.branch},
                  {"delta_plus", r.delta_plus},
                  {"terminals", r.terminals},
                  {"plan", plan},
                  {"path", path},
                  {"partitions",
                   {{"left", observations_to_json(r.partitions.left.members)},
                    {"right", observations_to_json(r.partitions.right.members)},
                    {"boxed_pairs", r.partitions.boxed.pairs.size()},
                    {"left_pos", observations_to_json(r.partitions.left_pos.members)},
                    {"left_neg", observations_to_json(r.partitions.left_neg.members)},
                    {"right_pos", observations_to_json(r.partitions.right_pos.members)},
                    {"right_neg", observations_to_json(r.partitions.right_neg.members)}}}}
                 .dump()
          << '\n';
    }
    for (const auto& c : trace.collisions)
      out << json{{"type", "collision"}, {"t", c.t}, {"x", c.x}, {"y", c.y}}
                 .dump()
          << '\n';
  }

  {
    std::ofstream out(dir / "metrics.json");
    out << metrics_to_json(metrics, trace).dump(2) << '\n';
  }

  {
    std::ofstream out(dir / "trajectory.csv");
    out << "t,x,y,theta\n";
    out.precision(12);
    for (const auto& p : trace.poses)
      out << p.t << ',' << p.x << ',' << p.y << ',' << p.theta << '\n';
  }

  {
    std::ofstream out(dir / "latency.csv");
    out << "plan_len,ms\n";
    out.precision(12);
    for (const auto& e : trace.plan_events) {
      const int len = e.result.plan.has_value()
                          ? static_cast<int>(e.result.plan->tasks.size())
                          : 0;
      out << len << ',' << e.result.latency_ms << '\n';
    }
  }
}

RunTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open trace");
  RunTrace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      trace.scenario_name = j.value("scenario", "");
      trace.agent = j.value("agent", "mc") == std::string{"baseline"}
                        ? AgentKind::Baseline
                        : AgentKind::Mc;
      trace.seed = j.value("seed", 0ULL);
      if (j.contains("config")) trace.config = config_from_json(j["config"]);
      trace.stopped = j.value("stopped", false);
      trace.stop_reason = j.value("stop_reason", "");
      trace.safe_zone_violations = j.value("safe_zone_violations", 0);
      if (j.contains("cutoff") && !j["cutoff"].is_null()) {
        const auto& c = j["cutoff"];
        trace.cutoff.x1 = c.at("line")[0];
        trace.cutoff.y1 = c.at("line")[1];
        trace.cutoff.x2 = c.at("line")[2];
        trace.cutoff.y2 = c.at("line")[3];
        trace.cutoff.inside_sign =
            c.value("inside", "negative") == std::string{"positive"} ? 1 : -1;
        trace.cutoff.valid = true;
      }
    } else if (type == "pose") {
      trace.poses.push_back(
          Pose{j.at("t"), j.at("x"), j.at("y"), j.at("theta")});
    } else if (type == "task") {
      TaskEvent e;
      e.t = j.at("t");
      e.from = task_from_string(j.at("from")).value_or(TaskKind::T0);
      e.to = task_from_string(j.at("to")).value_or(TaskKind::T0);
      e.reason = j.value("reason", "");
      trace.task_events.push_back(e);
    } else if (type == "plan") {
      PlanEvent e;
      e.t = j.at("t");
      e.result.latency_ms = j.value("latency_ms", 0.0);
      e.result.branch = j.value("branch", 0);
      e.result.delta_plus = j.value("delta_plus", 0.0);
      if (j.contains("terminals"))
        for (const auto& t : j["terminals"])
          e.result.terminals.insert(t.get<int>());
      if (j.contains("plan") && !j["plan"].is_null()) {
        Plan plan;
        for (const auto& name : j["plan"]) {
          const auto kind = task_from_string(name.get<std::string>());
          if (!kind.has_value())
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": unknown task kind in plan");
          plan.tasks.push_back(*kind);
        }
        e.result.plan = std::move(plan);
      }
      trace.plan_events.push_back(std::move(e));
    } else if (type == "collision") {
      trace.collisions.push_back(
          CollisionEvent{j.at("t"), j.at("x"), j.at("y")});
    } else {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": unknown record type '" + type + "'");
    }
  }
  if (trace.poses.empty())
    throw ConfigError(path + ": trace has no pose records");
  return trace;
}

WorldModel make_random_room(std::uint64_t seed, double half, double clearance) {
  std::mt19937_64 rng(seed);
  WorldModel world;
  world.segments = {
      {-half, -half, half, -half},
      {half, -half, half, half},
      {half, half, -half, half},
      {-half, half, -half, -half},
  };
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> extent(0.3, 0.8);
  std::uniform_real_distribution<double> centre(-half + 0.6, half - 0.6);
  const int n = count(rng);
  int placed = 0;
  int attempts = 0;
  while (placed < n && attempts < 200) {
    ++attempts;
    const double w = extent(rng), h = extent(rng);
    const double cx = centre(rng), cy = centre(rng);
    const double x0 = cx - w / 2, x1 = cx + w / 2;
    const double y0 = cy - h / 2, y1 = cy + h / 2;
    // Keep the spawn disc free.
    const double nx = std::clamp(0.0, x0, x1), ny = std::clamp(0.0, y0, y1);
    if (std::hypot(nx, ny) < clearance) continue;
    world.segments.push_back({x0, y0, x1, y0});
    world.segments.push_back({x1, y0, x1, y1});
    world.segments.push_back({x1, y1, x0, y1});
    world.segments.push_back({x0, y1, x0, y0});
    ++placed;
  }
  return world;
}

}  // namespace mcplan

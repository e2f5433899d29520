#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcplan/planner.hpp"
#include "mcplan/scenario.hpp"
#include "mcplan/sim.hpp"
#include "mcplan/tasks.hpp"

namespace mcplan {

enum class AgentKind { Baseline, Mc };

struct Pose {
  double t = 0, x = 0, y = 0, theta = 0;
};

struct TaskEvent {
  double t = 0;
  TaskKind from = TaskKind::T0;
  TaskKind to = TaskKind::T0;
  std::string reason;
};

struct PlanEvent {
  double t = 0;
  PlanResult result;
};

struct CollisionEvent {
  double t = 0, x = 0, y = 0;
};

struct RunTrace {
  std::string scenario_name;
  AgentKind agent = AgentKind::Mc;
  std::uint64_t seed = 0;
  RunConfig config;
  CutoffLine cutoff;
  std::vector<Pose> poses;  // includes the start pose at t=0
  std::vector<TaskEvent> task_events;
  std::vector<PlanEvent> plan_events;
  std::vector<CollisionEvent> collisions;
  bool stopped = false;
  std::string stop_reason;
  // Observations seen inside the safe zone during straight tasks; any hit
  // also stops an mc run (fail-safe).
  int safe_zone_violations = 0;
};

struct LatencyStats {
  int count = 0;
  double min_ms = 0, max_ms = 0, mean_ms = 0;
};

struct Metrics {
  double trajectory_length = 0;
  double in_culdesac_length = 0;
  double in_culdesac_time = 0;
  int culdesac_visits = 0;
  int collisions = 0;
  std::map<int, LatencyStats> latency_by_plan_len;
  LatencyStats latency_overall;
};

struct RunOptions {
  AgentKind agent = AgentKind::Mc;
  std::uint64_t seed = 0;
  double duration_s = 300.0;
  Preference prefer = Preference::Left;
  std::string start_pose;  // name in the scenario; empty = first
};

// Closed loop on a world: scan, evaluate the current task, dispatch
// (replan / advance / stop), actuate, integrate, check collisions. The mc
// agent replans on look triggers and executes extracted plans; the baseline
// spawns one reflex rotation per shield trigger (left unless prefer is
// Right or SeededRandom). Deterministic for fixed inputs and seed.
RunTrace run_loop(const WorldModel& world, const RobotState& start,
                  const RunConfig& config, const RunOptions& opts,
                  const CutoffLine& cutoff = {}, bool exit_on_cutoff = false,
                  const std::string& scenario_name = {});

RunTrace run_scenario(const ScenarioSpec& scenario, const RunOptions& opts);

Metrics compute_metrics(const RunTrace& trace);

// Writes trace.jsonl, metrics.json, trajectory.csv, latency.csv into
// out_dir (created if needed).
void export_run(const RunTrace& trace, const Metrics& metrics,
                const std::string& out_dir);

// Rebuild a trace from trace.jsonl for metric recomputation.
RunTrace load_trace(const std::string& path);

// Closed square room (half-extent `half`) with 1..4 axis-aligned rectangular
// obstacles, none intruding on the clearance disc around the origin where
// the robot starts. Deterministic per seed.
WorldModel make_random_room(std::uint64_t seed, double half = 2.0,
                            double clearance = 1.2);

const char* to_string(AgentKind kind);

}  // namespace mcplan

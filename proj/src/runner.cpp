#include <cmath>
#include <random>

#include "mcplan/harness.hpp"

namespace mcplan {

const char* to_string(AgentKind kind) {
  return kind == AgentKind::Baseline ? "baseline" : "mc";
}

namespace {

struct LoopContext {
  const RunConfig& config;
  const RunOptions& opts;
  RunTrace& trace;
  std::mt19937_64 noise_rng;
  std::mt19937_64 choice_rng;  // reflex direction / search shuffle seeds
};

bool is_straight(TaskKind kind) {
  return kind == TaskKind::T0 || kind == TaskKind::TS;
}

void record_task_event(RunTrace& trace, double t, TaskKind from, TaskKind to,
                       const char* reason) {
  trace.task_events.push_back(TaskEvent{t, from, to, reason});
}

// Dispatch for the model-checking agent. Returns false when the run must
// stop (fail-safe).
bool mc_dispatch(LoopContext& ctx, AgentState& agent, const PointCloud& cloud,
                 const TaskOutcome& outcome, double t) {
  const TaskKind prev = agent.current.kind;
  const AgentDecision decision = step_agent(agent, outcome);
  switch (decision.kind) {
    case AgentDecision::Kind::Continue:
      return true;
    case AgentDecision::Kind::NextTask: {
      const char* reason = prev == TaskKind::TS ? "shield"
                           : agent.plan.has_value() ? "rotation_done"
                                                    : "plan_done";
      record_task_event(ctx.trace, t, prev, agent.current.kind, reason);
      return true;
    }
    case AgentDecision::Kind::Replan: {
      PlanRequest request{cloud, *decision.replan_trigger, ctx.config.safety};
      SearchOptions search{ctx.opts.prefer, ctx.choice_rng()};
      PlanResult result = plan_generate(request, search);
      const bool found = result.plan.has_value();
      ctx.trace.plan_events.push_back(PlanEvent{t, std::move(result)});
      if (!found) {
        ctx.trace.stopped = true;
        ctx.trace.stop_reason = "no_plan";
        return false;
      }
      adopt_plan(agent, *ctx.trace.plan_events.back().result.plan);
      record_task_event(ctx.trace, t, prev, agent.current.kind, "replan");
      return true;
    }
    case AgentDecision::Kind::Stop:
      ctx.trace.stopped = true;
      ctx.trace.stop_reason = "shield_without_plan";
      return false;
  }
  return true;
}

// The reflex baseline: default straight driving, one rotation per shield
// trigger, no look-ahead and no plans.
void baseline_dispatch(LoopContext& ctx, AgentState& agent,
                       const PointCloud& cloud, double t) {
  const SafetyConfig& cfg = ctx.config.safety;
  if (!is_straight(agent.current.kind)) {
    const TaskOutcome outcome = evaluate_task(
        agent.current, cloud, cfg, ctx.config.sim.omega * cfg.dt);
    if (outcome.status == TaskStatus::Success) {
      record_task_event(ctx.trace, t, agent.current.kind, TaskKind::T0,
                        "rotation_done");
      agent.current = Task{};
    }
    return;
  }
  const auto shield = partition_shield(cloud, cfg);
  if (shield.empty()) return;
  const auto trigger = nearest_front(shield);
  TaskKind turn = TaskKind::TL;
  if (ctx.opts.prefer == Preference::Right) turn = TaskKind::TR;
  if (ctx.opts.prefer == Preference::SeededRandom)
    turn = (ctx.choice_rng() & 1u) != 0 ? TaskKind::TL : TaskKind::TR;
  const double angle = std::atan2(trigger->y, trigger->x);
  record_task_event(ctx.trace, t, agent.current.kind, turn, "reflex");
  agent.current = Task{turn, angle, angle};
}

}  // namespace

RunTrace run_loop(const WorldModel& world, const RobotState& start,
                  const RunConfig& config, const RunOptions& opts,
                  const CutoffLine& cutoff, bool exit_on_cutoff,
                  const std::string& scenario_name) {
  config.validate();

  RunTrace trace;
  trace.scenario_name = scenario_name;
  trace.agent = opts.agent;
  trace.seed = opts.seed;
  trace.config = config;
  trace.cutoff = cutoff;

  LoopContext ctx{config, opts, trace,
                  std::mt19937_64{opts.seed},
                  std::mt19937_64{opts.seed ^ 0x9e3779b97f4a7c15ULL}};

  RobotState robot = start;
  robot.footprint_radius = config.sim.footprint_radius;
  AgentState agent;

  const double dt = config.safety.dt;
  const auto n_steps = static_cast<long>(std::ceil(opts.duration_s / dt));
  bool entered = cutoff.valid && cutoff.inside(robot.x, robot.y);
  bool was_colliding = check_collision(world, robot);

  trace.poses.push_back(Pose{0.0, robot.x, robot.y, robot.theta});
  if (was_colliding)
    trace.collisions.push_back(CollisionEvent{0.0, robot.x, robot.y});

  // Safe-zone monitor state. A violation is the inductive failure: the safe
  // square gains an observation on a straight step even though both the safe
  // square and the shield were clear on the previous scan. Occupancy carried
  // in by a rotation (a wall just behind after a turnaround) is a transient,
  // not a monitored failure, and drains as the robot drives away.
  bool prev_safe_empty = true;
  bool prev_shield_empty = true;

  for (long step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    const PointCloud cloud = raycast_scan(
        world, robot, config.sim.n_beams, config.sim.max_range,
        config.noise.range_noise, &ctx.noise_rng,
        static_cast<std::int64_t>(std::llround(t * 1000.0)));

    const auto intruders = partition_safe(cloud, config.safety);
    if (is_straight(agent.current.kind) && !intruders.empty() &&
        prev_safe_empty && prev_shield_empty) {
      trace.safe_zone_violations += static_cast<int>(intruders.size());
      if (opts.agent == AgentKind::Mc) {
        trace.stopped = true;
        trace.stop_reason = "safe_zone_intrusion";
        break;
      }
    }
    prev_safe_empty = intruders.empty();
    prev_shield_empty = partition_shield(cloud, config.safety).empty();

    if (opts.agent == AgentKind::Mc) {
      const TaskOutcome outcome =
          evaluate_task(agent.current, cloud, config.safety,
                        config.sim.omega * config.safety.dt);
      if (!mc_dispatch(ctx, agent, cloud, outcome, t)) break;
    } else {
      baseline_dispatch(ctx, agent, cloud, t);
    }

    MotionCommand cmd;
    switch (agent.current.kind) {
      case TaskKind::T0:
      case TaskKind::TS:
        cmd = {MotionCommand::Kind::Straight, config.safety.v};
        break;
      case TaskKind::TL:
        cmd = {MotionCommand::Kind::Rotate, config.sim.omega};
        break;
      case TaskKind::TR:
        cmd = {MotionCommand::Kind::Rotate, -config.sim.omega};
        break;
    }
    robot = step_kinematics(robot, cmd, dt, config.noise, ctx.noise_rng);

    const double t_next = static_cast<double>(step + 1) * dt;
    trace.poses.push_back(Pose{t_next, robot.x, robot.y, robot.theta});

    const bool colliding = check_collision(world, robot);
    if (colliding && !was_colliding)
      trace.collisions.push_back(CollisionEvent{t_next, robot.x, robot.y});
    was_colliding = colliding;

    if (cutoff.valid) {
      const bool inside = cutoff.inside(robot.x, robot.y);
      entered = entered || inside;
      if (exit_on_cutoff && entered && !inside &&
          std::abs(cutoff.signed_offset(robot.x, robot.y)) >= 0.2)
        break;
    }
  }
  return trace;
}

RunTrace run_scenario(const ScenarioSpec& scenario, const RunOptions& opts) {
  std::string pose_name = opts.start_pose;
  if (pose_name.empty()) pose_name = scenario.start_poses.begin()->first;
  const auto it = scenario.start_poses.find(pose_name);
  if (it == scenario.start_poses.end())
    throw ConfigError("scenario '" + scenario.name + "' has no start pose '" +
                      pose_name + "'");
  RobotState start;
  start.x = it->second[0];
  start.y = it->second[1];
  start.theta = it->second[2];

  RunOptions effective = opts;
  if (!(effective.duration_s > 0.0)) effective.duration_s = scenario.duration_s;
  return run_loop(scenario.world, start, scenario.config, effective,
                  scenario.cutoff, scenario.exit_on_cutoff, scenario.name);
}

}  // namespace mcplan

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "mcplan/tasks.hpp"

using namespace mcplan;

namespace {

constexpr double kPi = std::numbers::pi;

SafetyConfig default_cfg() {
  SafetyConfig cfg;
  cfg.validate();
  return cfg;
}

PointCloud cloud_of(std::vector<Observation> obs) {
  PointCloud c;
  c.observations = std::move(obs);
  return c;
}

PointCloud cloud_at_bearing(double bearing, double range = 0.35) {
  return cloud_of({{range * std::cos(bearing), range * std::sin(bearing)}});
}

}  // namespace

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  CHECK(wrap_angle(-kPi - 0.1) == doctest::Approx(kPi - 0.1));
}

TEST_CASE("task name round-trip") {
  for (const auto k : {TaskKind::T0, TaskKind::TS, TaskKind::TL, TaskKind::TR})
    CHECK(task_from_string(to_string(k)) == k);
  CHECK_FALSE(task_from_string("T9").has_value());
}

TEST_CASE("default task keeps running until the look lane fills") {
  const auto cfg = default_cfg();
  Task t;  // T0

  auto out = evaluate_task(t, cloud_of({}), cfg);
  CHECK(out.status == TaskStatus::Running);

  out = evaluate_task(t, cloud_of({{0.35, 0.0}}), cfg);  // shield, not look
  CHECK(out.status == TaskStatus::Running);

  out = evaluate_task(t, cloud_of({{0.8, 0.1}}), cfg);
  CHECK(out.status == TaskStatus::Failure);
  REQUIRE(out.trigger.has_value());
  CHECK(out.trigger->x == doctest::Approx(0.8));
  CHECK(out.trigger->y == doctest::Approx(0.1));
}

TEST_CASE("straight task fails on the shield with the nearest trigger") {
  const auto cfg = default_cfg();
  Task t;
  t.kind = TaskKind::TS;

  auto out = evaluate_task(t, cloud_of({}), cfg);
  CHECK(out.status == TaskStatus::Running);

  out = evaluate_task(t, cloud_of({{0.8, 0.1}}), cfg);  // look lane only
  CHECK(out.status == TaskStatus::Running);

  out = evaluate_task(t, cloud_of({{0.35, 0.0}}), cfg);
  CHECK(out.status == TaskStatus::Failure);
  REQUIRE(out.trigger.has_value());
  CHECK(out.trigger->x == doctest::Approx(0.35));
  CHECK(out.trigger->y == doctest::Approx(0.0));
}

TEST_CASE("rotation succeeds past a quarter turn or on a lost target") {
  const auto cfg = default_cfg();
  Task t;
  t.kind = TaskKind::TL;
  t.initial_angle = 0.0;
  t.tracked_bearing = 0.0;

  // Spec arithmetic: |1.6 - 0| > pi/2.
  auto out = evaluate_task(t, cloud_at_bearing(1.6), cfg, 1.6);
  CHECK(out.status == TaskStatus::Success);

  t.tracked_bearing = 0.0;
  out = evaluate_task(t, cloud_at_bearing(-1.0), cfg, 1.0);
  CHECK(out.status == TaskStatus::Failure);  // still short of pi/2

  out = evaluate_task(t, cloud_of({}), cfg, 0.1);
  CHECK(out.status == TaskStatus::Success);  // nothing to track: out of view
}

TEST_CASE("rotation tracker follows a turning scan step by step") {
  const auto cfg = default_cfg();
  const double step = kPi / 2 * 0.2;  // omega * dt
  Task t;
  t.kind = TaskKind::TL;
  t.initial_angle = 0.0;
  t.tracked_bearing = 0.0;

  // A left turn sweeps a static disturbance clockwise in the robot frame.
  int steps = 0;
  TaskStatus status = TaskStatus::Failure;
  double bearing = 0.0;
  while (status == TaskStatus::Failure && steps < 20) {
    bearing -= step;
    status = evaluate_task(t, cloud_at_bearing(bearing), cfg, step).status;
    ++steps;
  }
  CHECK(status == TaskStatus::Success);
  // Strictly-greater-than-pi/2 needs six 18-degree steps.
  CHECK(steps == 6);
}

TEST_CASE("rotation tracker stays locked against a continuous wall") {
  const auto cfg = default_cfg();
  const double step = kPi / 2 * 0.2;
  Task t;
  t.kind = TaskKind::TR;
  t.initial_angle = 0.0;
  t.tracked_bearing = 0.0;

  // A wall ahead: after each right-turn step the wall's points all shift by
  // +step; a dense scan offers decoy bearings every two degrees. The
  // prediction must pick the swept one, not re-anchor near the old bearing.
  double swept = 0.0;
  int steps = 0;
  TaskStatus status = TaskStatus::Failure;
  while (status == TaskStatus::Failure && steps < 20) {
    swept += step;
    PointCloud scan;
    for (int k = -40; k <= 40; ++k)
      scan.observations.push_back(
          {0.35 * std::cos(swept + 0.035 * k), 0.35 * std::sin(swept + 0.035 * k)});
    status = evaluate_task(t, scan, cfg, step).status;
    ++steps;
  }
  CHECK(status == TaskStatus::Success);
  CHECK(steps == 6);
}

TEST_CASE("agent dispatch follows the plan state machine") {
  AgentState agent;

  // T0 failure requests a replan and carries the disturbance.
  auto decision = step_agent(
      agent, {TaskStatus::Failure, Disturbance{0.8, 0.1, DisturbanceKind::Front}});
  CHECK(decision.kind == AgentDecision::Kind::Replan);
  REQUIRE(decision.replan_trigger.has_value());
  CHECK(decision.replan_trigger->x == doctest::Approx(0.8));

  // Adopting a plan drops the agent into the implicit straight prefix.
  adopt_plan(agent, Plan{{TaskKind::TL, TaskKind::T0}, 0});
  CHECK(agent.current.kind == TaskKind::TS);

  // Shield trigger advances into the first plan task.
  decision = step_agent(
      agent, {TaskStatus::Failure, Disturbance{0.35, 0.0, DisturbanceKind::Front}});
  CHECK(decision.kind == AgentDecision::Kind::NextTask);
  CHECK(agent.current.kind == TaskKind::TL);
  CHECK(agent.current.initial_angle == doctest::Approx(0.0));

  // Rotation success consumes the final T0 and clears the plan.
  decision = step_agent(agent, {TaskStatus::Success, std::nullopt});
  CHECK(decision.kind == AgentDecision::Kind::NextTask);
  CHECK(agent.current.kind == TaskKind::T0);
  CHECK_FALSE(agent.plan.has_value());
}

TEST_CASE("straight failure with no plan stops the robot") {
  AgentState agent;
  agent.current.kind = TaskKind::TS;
  const auto decision = step_agent(
      agent, {TaskStatus::Failure, Disturbance{0.35, 0.0, DisturbanceKind::Front}});
  CHECK(decision.kind == AgentDecision::Kind::Stop);
}

TEST_CASE("back-to-back rotations hand over the tracked bearing") {
  AgentState agent;
  adopt_plan(agent, Plan{{TaskKind::TL, TaskKind::TL, TaskKind::T0}, 0});

  step_agent(agent,
             {TaskStatus::Failure, Disturbance{0.35, 0.1, DisturbanceKind::Front}});
  CHECK(agent.current.kind == TaskKind::TL);
  const double first_anchor = agent.current.initial_angle;
  CHECK(first_anchor == doctest::Approx(std::atan2(0.1, 0.35)));

  // Pretend the first rotation swept the target to -1.4 before succeeding.
  agent.current.tracked_bearing = -1.4;
  const auto decision = step_agent(agent, {TaskStatus::Success, std::nullopt});
  CHECK(decision.kind == AgentDecision::Kind::NextTask);
  CHECK(agent.current.kind == TaskKind::TL);
  CHECK(agent.current.initial_angle == doctest::Approx(-1.4));
}

TEST_CASE("running outcomes leave the agent untouched") {
  AgentState agent;
  auto decision = step_agent(agent, {TaskStatus::Running, std::nullopt});
  CHECK(decision.kind == AgentDecision::Kind::Continue);

  adopt_plan(agent, Plan{{TaskKind::TR, TaskKind::T0}, 0});
  decision = step_agent(agent, {TaskStatus::Running, std::nullopt});
  CHECK(decision.kind == AgentDecision::Kind::Continue);
  CHECK(agent.current.kind == TaskKind::TS);

  agent.current.kind = TaskKind::TR;
  decision = step_agent(agent, {TaskStatus::Failure, std::nullopt});
  CHECK(decision.kind == AgentDecision::Kind::Continue);  // still rotating
  CHECK(agent.current.kind == TaskKind::TR);
}

#include "mcplan/tasks.hpp"

#include <cmath>
#include <numbers>

namespace mcplan {

namespace {

constexpr double kPi = std::numbers::pi;

double obs_bearing(const Observation& o) { return std::atan2(o.y, o.x); }

Task spawn_task(TaskKind kind, double angle) {
  Task t;
  t.kind = kind;
  t.initial_angle = angle;
  t.tracked_bearing = angle;
  return t;
}

// Advance state.current to the next plan entry. A rotation inherits `angle`
// as its tracking anchor; consuming the final T0 clears the plan.
void advance_plan(AgentState& state, double angle) {
  Plan& plan = *state.plan;
  const TaskKind next = plan.tasks[plan.cursor++];
  if (next == TaskKind::T0) {
    state.plan.reset();
    state.current = Task{};
    return;
  }
  state.current = spawn_task(next, angle);
}

}  // namespace

const char* to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::T0: return "T0";
    case TaskKind::TS: return "TS";
    case TaskKind::TL: return "TL";
    case TaskKind::TR: return "TR";
  }
  return "?";
}

std::optional<TaskKind> task_from_string(const std::string& name) {
  if (name == "T0") return TaskKind::T0;
  if (name == "TS") return TaskKind::TS;
  if (name == "TL") return TaskKind::TL;
  if (name == "TR") return TaskKind::TR;
  return std::nullopt;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

TaskOutcome evaluate_task(Task& current, const PointCloud& cloud,
                          const SafetyConfig& cfg, double rotation_step) {
  switch (current.kind) {
    case TaskKind::T0: {
      const auto look = partition_look(cloud, cfg, cfg.d_look);
      if (!look.empty())
        return {TaskStatus::Failure, nearest_front(look)};
      return {TaskStatus::Running, std::nullopt};
    }
    case TaskKind::TS: {
      const auto shield = partition_shield(cloud, cfg);
      if (!shield.empty())
        return {TaskStatus::Failure, nearest_front(shield)};
      return {TaskStatus::Running, std::nullopt};
    }
    case TaskKind::TL:
    case TaskKind::TR: {
      // Re-associate the tracked disturbance with the scan bearing nearest
      // to where the last rotation step carried it (a left turn shifts every
      // static bearing by -rotation_step, a right turn by +rotation_step).
      // Matching against the prediction instead of the stale bearing keeps
      // the track sweeping at the rotation rate even against a continuous
      // wall; losing it means the target left the view, which counts as
      // done.
      const double predicted = wrap_angle(
          current.tracked_bearing +
          (current.kind == TaskKind::TL ? -rotation_step : rotation_step));
      const Observation* best = nullptr;
      double best_delta = kTrackWindow;
      for (const auto& o : cloud.observations) {
        const double d = std::abs(wrap_angle(obs_bearing(o) - predicted));
        if (d <= best_delta) {
          best_delta = d;
          best = &o;
        }
      }
      if (best == nullptr) return {TaskStatus::Success, std::nullopt};
      current.tracked_bearing = obs_bearing(*best);
      const double swept =
          std::abs(wrap_angle(current.tracked_bearing - current.initial_angle));
      if (swept > kPi / 2.0) return {TaskStatus::Success, std::nullopt};
      return {TaskStatus::Failure, std::nullopt};
    }
  }
  return {TaskStatus::Running, std::nullopt};
}

AgentDecision step_agent(AgentState& state, const TaskOutcome& outcome) {
  switch (state.current.kind) {
    case TaskKind::T0:
      if (outcome.status == TaskStatus::Failure)
        return {AgentDecision::Kind::Replan, outcome.trigger};
      return {AgentDecision::Kind::Continue, std::nullopt};

    case TaskKind::TS:
      if (outcome.status != TaskStatus::Failure)
        return {AgentDecision::Kind::Continue, std::nullopt};
      if (!state.plan.has_value())
        return {AgentDecision::Kind::Stop, std::nullopt};
      {
        double angle = 0.0;
        if (outcome.trigger.has_value())
          angle = std::atan2(outcome.trigger->y, outcome.trigger->x);
        advance_plan(state, angle);
      }
      return {AgentDecision::Kind::NextTask, std::nullopt};

    case TaskKind::TL:
    case TaskKind::TR:
      if (outcome.status != TaskStatus::Success)
        return {AgentDecision::Kind::Continue, std::nullopt};
      if (!state.plan.has_value()) {
        state.current = Task{};
        return {AgentDecision::Kind::NextTask, std::nullopt};
      }
      // A back-to-back rotation anchors on where the predecessor left its
      // target; there is no fresh shield trigger in between.
      advance_plan(state, state.current.tracked_bearing);
      return {AgentDecision::Kind::NextTask, std::nullopt};
  }
  return {AgentDecision::Kind::Continue, std::nullopt};
}

void adopt_plan(AgentState& state, Plan plan) {
  plan.cursor = 0;
  state.plan = std::move(plan);
  state.current = Task{TaskKind::TS, 0.0, 0.0};
}

}  // namespace mcplan

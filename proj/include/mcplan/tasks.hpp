#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcplan/sensing.hpp"

namespace mcplan {

// T0: default straight drive, fails when the look lane fills.
// TS: finite straight drive, fails when the shield fills.
// TL/TR: in-place quarter rotation (left/right), succeeds once the tracked
//        disturbance has swept past pi/2 or is lost.
enum class TaskKind { T0, TS, TL, TR };

const char* to_string(TaskKind kind);
std::optional<TaskKind> task_from_string(const std::string& name);

// Disturbance tracking window for rotations, radians. Must exceed the
// per-step rotation omega*dt or the tracker drops its target every scan.
inline constexpr double kTrackWindow = 0.35;

// Wrap to (-pi, pi].
double wrap_angle(double a);

struct Task {
  TaskKind kind = TaskKind::T0;
  double initial_angle = 0.0;    // rotations: trigger bearing at spawn
  double tracked_bearing = 0.0;  // rotations: last associated bearing
};

// Task kinds to execute in order; always ends in T0, length 2..4.
struct Plan {
  std::vector<TaskKind> tasks;
  std::size_t cursor = 0;
};

enum class TaskStatus { Running, Success, Failure };

struct TaskOutcome {
  TaskStatus status = TaskStatus::Running;
  std::optional<Disturbance> trigger;  // set on straight-task failure only
};

// Straight tasks fail on their trigger partition (T0: look, TS: shield) and
// otherwise keep running; they never report success. Rotations report
// failure while still turning and success once done. Updates the rotation
// tracking state in place; rotation_step is the bearing advance per scan
// (omega*dt) the re-association predicts against.
TaskOutcome evaluate_task(Task& current, const PointCloud& cloud,
                          const SafetyConfig& cfg, double rotation_step = 0.0);

struct AgentState {
  Task current;
  std::optional<Plan> plan;
};

struct AgentDecision {
  enum class Kind {
    Continue,  // keep executing the current task
    NextTask,  // state.current was advanced
    Replan,    // T0 failed; caller must plan, then adopt_plan
    Stop,      // shield hit with nothing left to execute
  };
  Kind kind = Kind::Continue;
  std::optional<Disturbance> replan_trigger;
};

// Dispatch one evaluation result. Replan is only ever issued from T0
// failure, Stop only from TS failure with no stored plan. A TS failure with
// a plan advances into it; a rotation success advances the plan cursor, and
// consuming the final T0 clears the plan (default driving resumes).
AgentDecision step_agent(AgentState& state, const TaskOutcome& outcome);

// Install a fresh plan: cursor at the first task, current task becomes the
// implicit TS prefix that carries the robot until the shield trigger.
void adopt_plan(AgentState& state, Plan plan);

}  // namespace mcplan

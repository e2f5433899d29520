#pragma once

#include <optional>
#include <set>

#include "mcplan/model.hpp"
#include "mcplan/sensing.hpp"
#include "mcplan/tasks.hpp"

namespace mcplan {

struct PlanRequest {
  PointCloud cloud;    // unshifted scan that triggered the replan
  Disturbance d_plus;  // nearest look-lane disturbance
  SafetyConfig cfg;
};

struct PlanResult {
  std::optional<Plan> plan;  // empty means NoPlan: caller stops the robot
  std::set<int> terminals;
  double latency_ms = 0.0;
  double delta_plus = 0.0;  // forward shift applied to the cloud
  int branch = 0;           // 2: open lateral, 3: boxed in, 4: longitudinal
  PartitionSet partitions;
  std::optional<ProductPath> path;
};

// Staged assessment. Shift the cloud so the front disturbance sits at the
// safe-zone edge, then try in order: an open lateral side (2-task plans),
// the boxed-in turn-around (3 tasks), and the longitudinal lanes around the
// nearest lateral disturbances (4 tasks). Each stage valuates the transition
// system, searches the NFA product over that stage's terminal set, and
// returns the first accepting path as the plan. All four longitudinal lanes
// occupied leaves no terminal and therefore no plan.
PlanResult plan_generate(const PlanRequest& request,
                         const SearchOptions& opts = {});

}  // namespace mcplan

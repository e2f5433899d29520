#pragma once

#include <utility>
#include <vector>

#include "mcplan/sensing.hpp"

namespace mcplan {

enum class Side { Left, Right };
enum class LongitudinalSign { Positive, Negative };

// Lateral disturbance partition for one side. After the nearest-filter the
// member list holds at most one observation (the argmin |o_y|, ties by beam
// order); empty means that side is open within d_max.
struct LateralPartition {
  Side side = Side::Left;
  std::vector<Observation> members;
};

// Longitudinal assessment lane after the lateral shift o_y -= delta. Members
// keep the shifted coordinates; all matches are retained.
struct LongitudinalPartition {
  Side lateral_side = Side::Left;
  LongitudinalSign sign = LongitudinalSign::Positive;
  std::vector<Observation> members;
};

// Pairs (D_left, D_right) with both |y| <= d_min. Non-empty means boxed in.
struct BoxedInEvidence {
  std::vector<std::pair<Observation, Observation>> pairs;
};

// Left lane:  |o_x| <= d_safe, 0 < o_y <= d_max, reduced to the nearest
// member. Right lane mirrors with -d_max <= o_y < 0. Pass the cloud already
// shifted by the planner's forward offset.
LateralPartition construct_lateral(const PointCloud& cloud, double d_safe,
                                   double d_max, bool left);

// Forward lane (positive): d_safe < o_x <= d_safe + beta*d_safe after the
// lateral shift, |o_y| <= width/2. Negative mirrors behind the robot:
// -(d_safe + beta*d_safe) <= o_x < -d_safe.
LongitudinalPartition construct_longitudinal(const PointCloud& cloud,
                                             Side lateral_side, double delta,
                                             double d_safe, double beta,
                                             double width, bool positive);

BoxedInEvidence boxed_in(const LateralPartition& left,
                         const LateralPartition& right, double d_min);

}  // namespace mcplan

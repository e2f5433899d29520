#include "mcplan/abstraction.hpp"

#include <cmath>

namespace mcplan {

namespace {

// The forward shift places the triggering disturbance exactly on the
// |x| = d_safe boundary, so a flat wall facing the robot lands on it too,
// scattered a few ulp either way by the per-beam arithmetic. The grace pins
// those points inside the inclusive bound deterministically; the exclusive
// longitudinal bounds move by the same amount so the bands stay disjoint.
constexpr double kBoundaryEps = 1e-9;

}  // namespace

LateralPartition construct_lateral(const PointCloud& cloud, double d_safe,
                                   double d_max, bool left) {
  LateralPartition part;
  part.side = left ? Side::Left : Side::Right;
  const Observation* nearest = nullptr;
  for (const auto& o : cloud.observations) {
    if (std::abs(o.x) > d_safe + kBoundaryEps) continue;
    const bool inside = left ? (o.y > 0.0 && o.y <= d_max + kBoundaryEps)
                             : (o.y < 0.0 && o.y >= -d_max - kBoundaryEps);
    if (!inside) continue;
    if (nearest == nullptr || std::abs(o.y) < std::abs(nearest->y)) nearest = &o;
  }
  if (nearest != nullptr) part.members.push_back(*nearest);
  return part;
}

LongitudinalPartition construct_longitudinal(const PointCloud& cloud,
                                             Side lateral_side, double delta,
                                             double d_safe, double beta,
                                             double width, bool positive) {
  LongitudinalPartition part;
  part.lateral_side = lateral_side;
  part.sign = positive ? LongitudinalSign::Positive : LongitudinalSign::Negative;
  const double reach = d_safe + beta * d_safe;
  const double half = 0.5 * width;
  for (const auto& o : cloud.observations) {
    const double y = o.y - delta;
    if (std::abs(y) > half + kBoundaryEps) continue;
    const bool inside =
        positive ? (o.x > d_safe + kBoundaryEps && o.x <= reach + kBoundaryEps)
                 : (o.x < -d_safe - kBoundaryEps && o.x >= -reach - kBoundaryEps);
    if (inside) part.members.push_back(Observation{o.x, y});
  }
  return part;
}

BoxedInEvidence boxed_in(const LateralPartition& left,
                         const LateralPartition& right, double d_min) {
  BoxedInEvidence ev;
  for (const auto& l : left.members) {
    if (std::abs(l.y) > d_min) continue;
    for (const auto& r : right.members) {
      if (std::abs(r.y) > d_min) continue;
      ev.pairs.emplace_back(l, r);
    }
  }
  return ev;
}

}  // namespace mcplan

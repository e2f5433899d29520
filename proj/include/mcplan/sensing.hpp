#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mcplan {

// Egocentric 2D observation: +x ahead of the robot, +y to its left, meters.
// The origin (0,0) is the robot centre and never appears as an observation.
struct Observation {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Observation& a, const Observation& b) {
  return a.x == b.x && a.y == b.y;
}

// One LiDAR revolution, observations in beam order (angle 2*pi*k/n_beams).
// Beams that hit nothing within range are omitted.
struct PointCloud {
  std::vector<Observation> observations;
  std::int64_t timestamp_ms = 0;
};

enum class DisturbanceKind { Front, Left, Right };

// A single observation promoted to a planning input. Left disturbances have
// y > 0, right disturbances y < 0.
struct Disturbance {
  double x = 0.0;
  double y = 0.0;
  DisturbanceKind kind = DisturbanceKind::Front;
};

// Geometry of the safety envelope. All distances in meters, dt in seconds.
//
// The shield depth is one worst-case step (v*dt plus tolerance) beyond the
// safe zone, and the shield lane width L+tol must equal 2*d_safe so nothing
// can slip past the shield into the safe zone sideways. validate() enforces
// that coupling.
struct SafetyConfig {
  double d_safe = 0.3;  // safe-zone half-extent
  double v = 0.2;       // straight-task speed, m/s
  double dt = 0.2;      // control/scan period, s
  double tol = 0.06;    // motion tolerance; must dominate per-step error
  double L = 0.54;      // robot width
  double d_max = 1.0;   // lateral assessment reach
  double d_min = 0.6;   // boxed-in threshold
  double beta = 2.0;    // longitudinal assessment reach factor
  double d_look = 1.0;  // look-ahead reach for replan triggering

  double shield_reach() const { return d_safe + v * dt + tol; }
  double half_width() const { return 0.5 * (L + tol); }
  double long_reach() const { return d_safe + beta * d_safe; }

  // Throws std::invalid_argument when the envelope is inconsistent.
  void validate() const;
};

// Safe zone: 0 < |o_x| <= d_safe and 0 < |o_y| <= d_safe. Anything here is
// already too close to react to; the agent treats membership as a fail-safe
// stop condition.
std::vector<Observation> partition_safe(const PointCloud& cloud,
                                        const SafetyConfig& cfg);

// Shield: d_safe < o_x <= d_safe + v*dt + tol, |o_y| <= (L+tol)/2. One
// worst-case straight step deep, so an approaching observation cannot cross
// it unseen between scans.
std::vector<Observation> partition_shield(const PointCloud& cloud,
                                          const SafetyConfig& cfg);

// Look-ahead lane: shield_reach < o_x <= d_look, same lane width as the
// shield. Non-empty look triggers re-planning while there is still room to
// execute the plan. Requires d_look > shield_reach (throws otherwise).
std::vector<Observation> partition_look(const PointCloud& cloud,
                                        const SafetyConfig& cfg, double d_look);

// D+ selection: minimum o_x, ties by minimum |o_y|, then beam order.
std::optional<Disturbance> nearest_front(const std::vector<Observation>& obs,
                                         DisturbanceKind kind = DisturbanceKind::Front);

}  // namespace mcplan

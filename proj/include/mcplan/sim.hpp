#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mcplan/sensing.hpp"

namespace mcplan {

struct Segment {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

struct WorldModel {
  std::vector<Segment> segments;
};

struct RobotState {
  double x = 0, y = 0;
  double theta = 0;  // world heading, (-pi, pi]
  double footprint_radius = 0.13;
};

struct NoiseModel {
  double epsilon_long = 0.0;  // max |longitudinal error| per straight step, m
  double range_noise = 0.0;   // gaussian sigma on measured range, m
  double veer = 0.0;          // systematic heading drift per straight step, rad
};

struct MotionCommand {
  enum class Kind { Straight, Rotate };
  Kind kind = Kind::Straight;
  double speed = 0.0;  // m/s for Straight, signed rad/s for Rotate
};

// Distance along the ray (origin px,py, unit direction dx,dy) to the
// segment, if it intersects ahead of the origin.
std::optional<double> ray_segment_hit(double px, double py, double dx,
                                      double dy, const Segment& seg);

double point_segment_distance(double px, double py, const Segment& seg);

// One revolution: beams at egocentric angles 2*pi*k/n_beams, nearest segment
// hit within max_range, misses omitted. Observations are exact along-beam
// coordinates, so every observation lies on some segment and respects the
// robot frame; range_noise > 0 jitters the measured range (needs rng).
PointCloud raycast_scan(const WorldModel& world, const RobotState& robot,
                        int n_beams, double max_range,
                        double range_noise = 0.0,
                        std::mt19937_64* rng = nullptr,
                        std::int64_t timestamp_ms = 0);

// Unicycle step. Straight: advance speed*dt plus a uniform longitudinal
// error within +/-epsilon_long, then drift by veer. Rotate: in place by
// speed*dt. Heading stays wrapped to (-pi, pi].
RobotState step_kinematics(const RobotState& robot, const MotionCommand& cmd,
                           double dt, const NoiseModel& noise,
                           std::mt19937_64& rng);

// True when any segment is strictly inside the footprint circle.
bool check_collision(const WorldModel& world, const RobotState& robot);

}  // namespace mcplan

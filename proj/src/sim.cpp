#include "mcplan/sim.hpp"

#include <cmath>
#include <numbers>

namespace mcplan {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_heading(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}
}  // namespace

std::optional<double> ray_segment_hit(double px, double py, double dx,
                                      double dy, const Segment& seg) {
  const double ex = seg.x2 - seg.x1;
  const double ey = seg.y2 - seg.y1;
  const double denom = dx * ey - dy * ex;
  if (denom == 0.0) return std::nullopt;  // parallel (collinear treated as miss)
  const double wx = seg.x1 - px;
  const double wy = seg.y1 - py;
  const double t = (wx * ey - wy * ex) / denom;  // along the ray
  const double u = (wx * dy - wy * dx) / denom;  // along the segment
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

double point_segment_distance(double px, double py, const Segment& seg) {
  const double ex = seg.x2 - seg.x1;
  const double ey = seg.y2 - seg.y1;
  const double wx = px - seg.x1;
  const double wy = py - seg.y1;
  const double len2 = ex * ex + ey * ey;
  double s = len2 > 0.0 ? (wx * ex + wy * ey) / len2 : 0.0;
  if (s < 0.0) s = 0.0;
  if (s > 1.0) s = 1.0;
  const double cx = seg.x1 + s * ex - px;
  const double cy = seg.y1 + s * ey - py;
  return std::sqrt(cx * cx + cy * cy);
}

PointCloud raycast_scan(const WorldModel& world, const RobotState& robot,
                        int n_beams, double max_range, double range_noise,
                        std::mt19937_64* rng, std::int64_t timestamp_ms) {
  PointCloud cloud;
  cloud.timestamp_ms = timestamp_ms;
  cloud.observations.reserve(static_cast<std::size_t>(n_beams));
  std::normal_distribution<double> jitter(0.0, range_noise);
  for (int k = 0; k < n_beams; ++k) {
    const double ego = 2.0 * kPi * k / n_beams;
    const double world_angle = robot.theta + ego;
    const double dx = std::cos(world_angle);
    const double dy = std::sin(world_angle);
    double best = max_range;
    bool hit = false;
    for (const auto& seg : world.segments) {
      const auto t = ray_segment_hit(robot.x, robot.y, dx, dy, seg);
      if (t.has_value() && *t <= best) {
        best = *t;
        hit = true;
      }
    }
    if (!hit) continue;
    double r = best;
    if (range_noise > 0.0 && rng != nullptr) r += jitter(*rng);
    if (r <= 1e-12) continue;  // the origin is never an observation
    cloud.observations.push_back(
        Observation{r * std::cos(ego), r * std::sin(ego)});
  }
  return cloud;
}

RobotState step_kinematics(const RobotState& robot, const MotionCommand& cmd,
                           double dt, const NoiseModel& noise,
                           std::mt19937_64& rng) {
  RobotState next = robot;
  if (cmd.kind == MotionCommand::Kind::Rotate) {
    next.theta = wrap_heading(robot.theta + cmd.speed * dt);
    return next;
  }
  double advance = cmd.speed * dt;
  if (noise.epsilon_long > 0.0) {
    std::uniform_real_distribution<double> err(-noise.epsilon_long,
                                               noise.epsilon_long);
    advance += err(rng);
  }
  next.x += advance * std::cos(robot.theta);
  next.y += advance * std::sin(robot.theta);
  next.theta = wrap_heading(robot.theta + noise.veer);
  return next;
}

bool check_collision(const WorldModel& world, const RobotState& robot) {
  for (const auto& seg : world.segments)
    if (point_segment_distance(robot.x, robot.y, seg) < robot.footprint_radius)
      return true;
  return false;
}

}  // namespace mcplan

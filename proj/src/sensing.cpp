#include "mcplan/sensing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcplan {

void SafetyConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("SafetyConfig: " + what);
  };
  if (!(d_safe > 0.0)) fail("d_safe must be positive");
  if (!(v > 0.0)) fail("v must be positive");
  if (!(dt > 0.0)) fail("dt must be positive");
  if (!(tol >= 0.0)) fail("tol must be non-negative");
  if (!(L > 0.0)) fail("L must be positive");
  if (!(beta > 0.0)) fail("beta must be positive");
  if (!(d_min > 0.0)) fail("d_min must be positive");
  if (!(d_max >= d_min)) fail("d_max must be >= d_min");
  if (std::abs(half_width() - d_safe) > 1e-9)
    fail("(L+tol)/2 must equal d_safe; shield lane and safe zone widths are coupled");
  if (!(d_look > shield_reach())) fail("d_look must exceed d_safe + v*dt + tol");
}

std::vector<Observation> partition_safe(const PointCloud& cloud,
                                        const SafetyConfig& cfg) {
  std::vector<Observation> out;
  for (const auto& o : cloud.observations) {
    const double ax = std::abs(o.x), ay = std::abs(o.y);
    if (ax > 0.0 && ax <= cfg.d_safe && ay > 0.0 && ay <= cfg.d_safe)
      out.push_back(o);
  }
  return out;
}

std::vector<Observation> partition_shield(const PointCloud& cloud,
                                          const SafetyConfig& cfg) {
  std::vector<Observation> out;
  const double far = cfg.shield_reach();
  const double lane = cfg.half_width();
  for (const auto& o : cloud.observations) {
    if (o.x > cfg.d_safe && o.x <= far && std::abs(o.y) <= lane)
      out.push_back(o);
  }
  return out;
}

std::vector<Observation> partition_look(const PointCloud& cloud,
                                        const SafetyConfig& cfg,
                                        double d_look) {
  const double near = cfg.shield_reach();
  if (!(d_look > near))
    throw std::invalid_argument("partition_look: d_look must exceed shield reach");
  std::vector<Observation> out;
  const double lane = cfg.half_width();
  for (const auto& o : cloud.observations) {
    if (o.x > near && o.x <= d_look && std::abs(o.y) <= lane) out.push_back(o);
  }
  return out;
}

std::optional<Disturbance> nearest_front(const std::vector<Observation>& obs,
                                         DisturbanceKind kind) {
  if (obs.empty()) return std::nullopt;
  const Observation* best = &obs.front();
  for (const auto& o : obs) {
    if (o.x < best->x || (o.x == best->x && std::abs(o.y) < std::abs(best->y)))
      best = &o;
  }
  return Disturbance{best->x, best->y, kind};
}

}  // namespace mcplan

#include "mcplan/planner.hpp"

#include <chrono>
#include <utility>

namespace mcplan {

namespace {

PointCloud shift_forward(const PointCloud& cloud, double delta) {
  PointCloud out;
  out.timestamp_ms = cloud.timestamp_ms;
  out.observations.reserve(cloud.observations.size());
  for (const auto& o : cloud.observations)
    out.observations.push_back(Observation{o.x - delta, o.y});
  return out;
}

}  // namespace

PlanResult plan_generate(const PlanRequest& request, const SearchOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const SafetyConfig& cfg = request.cfg;

  PlanResult result;
  result.delta_plus =
      request.d_plus.x > cfg.d_safe ? request.d_plus.x - cfg.d_safe : 0.0;
  const PointCloud shifted = shift_forward(request.cloud, result.delta_plus);

  PartitionSet& parts = result.partitions;
  parts.left = construct_lateral(shifted, cfg.d_safe, cfg.d_max, true);
  parts.right = construct_lateral(shifted, cfg.d_safe, cfg.d_max, false);

  const Dts dts = build_dts(cfg);
  const Nfa nfa = Nfa::negated_plan_property();

  auto finish = [&](int branch) {
    result.branch = branch;
    const Valuation val = valuate(dts, parts, cfg);
    result.path = product_search(dts, val, nfa, result.terminals, opts);
    if (result.path.has_value()) result.plan = extract_plan(*result.path);
    result.latency_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return result;
  };

  if (parts.left.members.empty() || parts.right.members.empty()) {
    if (parts.left.members.empty()) result.terminals.insert(3);
    if (parts.right.members.empty()) result.terminals.insert(4);
    return finish(2);
  }

  parts.boxed = boxed_in(parts.left, parts.right, cfg.d_min);
  if (!parts.boxed.pairs.empty()) {
    result.terminals.insert(14);
    return finish(3);
  }

  const double width = cfg.L + cfg.tol;
  const double delta_l = parts.left.members.front().y - cfg.d_safe;
  const double delta_r = parts.right.members.front().y + cfg.d_safe;
  parts.left_pos = construct_longitudinal(shifted, Side::Left, delta_l,
                                          cfg.d_safe, cfg.beta, width, true);
  parts.left_neg = construct_longitudinal(shifted, Side::Left, delta_l,
                                          cfg.d_safe, cfg.beta, width, false);
  parts.right_pos = construct_longitudinal(shifted, Side::Right, delta_r,
                                           cfg.d_safe, cfg.beta, width, true);
  parts.right_neg = construct_longitudinal(shifted, Side::Right, delta_r,
                                           cfg.d_safe, cfg.beta, width, false);
  if (parts.left_pos.members.empty()) result.terminals.insert(7);
  if (parts.left_neg.members.empty()) result.terminals.insert(11);
  if (parts.right_pos.members.empty()) result.terminals.insert(8);
  if (parts.right_neg.members.empty()) result.terminals.insert(12);
  return finish(4);
}

}  // namespace mcplan

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "mcplan/planner.hpp"

using namespace mcplan;

namespace {

PlanRequest request_with(std::vector<Observation> obs, Disturbance d_plus) {
  PlanRequest req;
  req.cloud.observations = std::move(obs);
  req.d_plus = d_plus;
  req.cfg.validate();
  return req;
}

const Disturbance kFront{0.8, 0.0, DisturbanceKind::Front};

}  // namespace

TEST_CASE("open flanks produce a two-task plan") {
  // A single wall dead ahead: after the shift it sits on the safe-zone edge
  // with y = 0, which belongs to neither flank.
  const auto req = request_with({{0.8, 0.0}}, kFront);
  const auto result = plan_generate(req);

  CHECK(result.branch == 2);
  CHECK(result.delta_plus == doctest::Approx(0.5));
  CHECK(result.terminals == std::set<int>{3, 4});
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tasks == std::vector<TaskKind>{TaskKind::TL, TaskKind::T0});
  CHECK(result.plan->cursor == 0);
  CHECK(result.partitions.left.members.empty());
  CHECK(result.partitions.right.members.empty());
}

TEST_CASE("corner with one occupied flank turns the open way") {
  // Wall ahead plus a wall on the right within d_max: only the left flank
  // stays open.
  auto result = plan_generate(request_with({{0.8, 0.0}, {0.6, -0.7}}, kFront));
  CHECK(result.branch == 2);
  CHECK(result.terminals == std::set<int>{3});
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tasks == std::vector<TaskKind>{TaskKind::TL, TaskKind::T0});
  CHECK(result.partitions.right.members.size() == 1);

  // Mirrored corner turns right.
  result = plan_generate(request_with({{0.8, 0.0}, {0.6, 0.7}}, kFront));
  CHECK(result.branch == 2);
  CHECK(result.terminals == std::set<int>{4});
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tasks == std::vector<TaskKind>{TaskKind::TR, TaskKind::T0});
}

TEST_CASE("boxed-in corridor produces the turn-around plan") {
  const auto result = plan_generate(
      request_with({{0.8, 0.0}, {0.6, 0.45}, {0.6, -0.45}}, kFront));

  CHECK(result.branch == 3);
  CHECK(result.terminals == std::set<int>{14});
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tasks ==
        std::vector<TaskKind>{TaskKind::TL, TaskKind::TL, TaskKind::T0});
  CHECK(result.partitions.boxed.pairs.size() == 1);
}

TEST_CASE("occupied flanks beyond d_min fall through to four tasks") {
  const auto result = plan_generate(
      request_with({{0.8, 0.0}, {0.6, 0.8}, {0.6, -0.8}}, kFront));

  CHECK(result.branch == 4);
  CHECK(result.terminals == std::set<int>{7, 8, 11, 12});
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tasks == std::vector<TaskKind>{TaskKind::TL, TaskKind::TS,
                                                    TaskKind::TR, TaskKind::T0});
  CHECK(result.partitions.boxed.pairs.empty());
  CHECK(result.partitions.left_pos.members.empty());
  CHECK(result.partitions.right_neg.members.empty());
}

TEST_CASE("right preference flips the returned plan") {
  SearchOptions opts;
  opts.prefer = Preference::Right;
  const auto result = plan_generate(
      request_with({{0.8, 0.0}, {0.6, 0.8}, {0.6, -0.8}}, kFront), opts);
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tasks == std::vector<TaskKind>{TaskKind::TR, TaskKind::TS,
                                                    TaskKind::TR, TaskKind::T0});
}

TEST_CASE("all four longitudinal lanes occupied leaves no plan") {
  const auto result = plan_generate(request_with(
      {
          {0.8, 0.0},                    // trigger wall
          {0.6, 0.8},   {0.6, -0.8},     // flanks beyond d_min
          {1.1, 0.5},   {-0.1, 0.5},     // left lane, ahead and behind
          {1.1, -0.5},  {-0.1, -0.5},    // right lane, ahead and behind
      },
      kFront));

  CHECK(result.branch == 4);
  CHECK(result.terminals.empty());
  CHECK_FALSE(result.plan.has_value());
  CHECK_FALSE(result.path.has_value());
  CHECK_FALSE(result.partitions.left_pos.members.empty());
  CHECK_FALSE(result.partitions.left_neg.members.empty());
  CHECK_FALSE(result.partitions.right_pos.members.empty());
  CHECK_FALSE(result.partitions.right_neg.members.empty());
}

TEST_CASE("plan length matches the branch that produced it") {
  const std::vector<std::vector<Observation>> worlds = {
      {{0.8, 0.0}},
      {{0.8, 0.0}, {0.6, -0.7}},
      {{0.8, 0.0}, {0.6, 0.45}, {0.6, -0.45}},
      {{0.8, 0.0}, {0.6, 0.8}, {0.6, -0.8}},
  };
  for (const auto& obs : worlds) {
    const auto result = plan_generate(request_with(obs, kFront));
    REQUIRE(result.plan.has_value());
    CHECK(result.plan->tasks.size() == static_cast<std::size_t>(result.branch));
    CHECK(result.plan->tasks.back() == TaskKind::T0);
  }
}

TEST_CASE("no shift is applied when the trigger is already at the edge") {
  // d_plus.x <= d_safe: partitions must equal those of the raw cloud.
  const std::vector<Observation> obs = {{0.1, 0.5}, {0.2, -0.4}};
  const auto result = plan_generate(
      request_with(obs, Disturbance{0.25, 0.0, DisturbanceKind::Front}));

  CHECK(result.delta_plus == 0.0);
  PointCloud raw;
  raw.observations = obs;
  const auto pl = construct_lateral(raw, 0.3, 1.0, true);
  const auto pr = construct_lateral(raw, 0.3, 1.0, false);
  REQUIRE(result.partitions.left.members.size() == pl.members.size());
  REQUIRE(result.partitions.right.members.size() == pr.members.size());
  CHECK(result.partitions.left.members[0] == pl.members[0]);
  CHECK(result.partitions.right.members[0] == pr.members[0]);
}

TEST_CASE("latency is measured and plausible") {
  // A full-size cloud: 360 points in a ring.
  std::vector<Observation> obs;
  for (int k = 0; k < 360; ++k) {
    const double a = 2.0 * 3.14159265358979 * k / 360.0;
    obs.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
  }
  const auto result = plan_generate(request_with(std::move(obs), kFront));
  CHECK(result.latency_ms >= 0.0);
  CHECK(result.latency_ms < 100.0);
}

TEST_CASE("planning is deterministic") {
  const auto req =
      request_with({{0.8, 0.0}, {0.6, 0.8}, {0.6, -0.8}}, kFront);
  const auto a = plan_generate(req);
  const auto b = plan_generate(req);
  REQUIRE(a.plan.has_value());
  REQUIRE(b.plan.has_value());
  CHECK(a.plan->tasks == b.plan->tasks);
  CHECK(a.terminals == b.terminals);
  CHECK(a.branch == b.branch);
  CHECK(a.delta_plus == b.delta_plus);
}

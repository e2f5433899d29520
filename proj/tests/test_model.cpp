#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>
#include <vector>

#include "mcplan/model.hpp"

using namespace mcplan;

namespace {

constexpr double kPi = std::numbers::pi;

SafetyConfig default_cfg() {
  SafetyConfig cfg;
  cfg.validate();
  return cfg;
}

// Both flanks occupied beyond d_min, all four longitudinal lanes open.
PartitionSet open_corridor_parts() {
  PartitionSet parts;
  parts.left.members = {{0.0, 0.8}};
  parts.right.members = {{0.0, -0.8}};
  return parts;
}

// The six root-to-leaf state sequences of the transition tree.
const std::vector<std::vector<int>> kTreePaths = {
    {0, 1, 3, 5, 7}, {0, 1, 3, 9, 11}, {0, 1, 13, 14},
    {0, 2, 4, 6, 8}, {0, 2, 4, 10, 12}, {0, 2, 13, 14},
};

}  // namespace

TEST_CASE("transition system structure") {
  const auto dts = build_dts(default_cfg());
  CHECK(dts.states.size() == 15);
  CHECK(dts.edges.size() == 15);
  CHECK(dts.initial == 0);

  CHECK(dts.states[0].x == doctest::Approx(0.3));
  CHECK(dts.states[0].y == doctest::Approx(0.0));
  CHECK(dts.states[0].heading == doctest::Approx(0.0));
  CHECK(dts.states[1].y == doctest::Approx(0.3));
  CHECK(dts.states[1].heading == doctest::Approx(kPi / 2));
  CHECK(dts.states[2].y == doctest::Approx(-0.3));
  CHECK(dts.states[13].x == doctest::Approx(-0.3));
  CHECK(dts.states[13].heading == doctest::Approx(kPi));
  CHECK(dts.states[14].x == doctest::Approx(-0.9));
  CHECK(dts.states[14].heading == doctest::Approx(kPi));

  using E = std::tuple<int, int, TaskKind>;
  std::set<E> got;
  for (const auto& e : dts.edges) got.insert({e.src, e.dst, e.task});
  const std::set<E> want = {
      {0, 1, TaskKind::TL},  {0, 2, TaskKind::TR},  {1, 3, TaskKind::TS},
      {2, 4, TaskKind::TS},  {1, 13, TaskKind::TL}, {2, 13, TaskKind::TR},
      {13, 14, TaskKind::T0}, {3, 5, TaskKind::TR}, {3, 9, TaskKind::TL},
      {4, 6, TaskKind::TL},  {4, 10, TaskKind::TR}, {5, 7, TaskKind::T0},
      {9, 11, TaskKind::T0}, {6, 8, TaskKind::T0},  {10, 12, TaskKind::T0},
  };
  CHECK(got == want);

  // s13 is shared between the two boxed-in branches; everything else has a
  // single parent and s0 has none.
  std::array<int, 15> in_degree{};
  for (const auto& e : dts.edges) ++in_degree[static_cast<std::size_t>(e.dst)];
  CHECK(in_degree[0] == 0);
  CHECK(in_degree[13] == 2);
  for (int id = 1; id < 15; ++id)
    if (id != 13) CHECK(in_degree[static_cast<std::size_t>(id)] == 1);

  // Only the straight drives resolve against the valuation.
  for (const auto& e : dts.edges)
    CHECK(e.straight_outcome == ((e.src == 1 && e.dst == 3) ||
                                 (e.src == 2 && e.dst == 4)));
}

TEST_CASE("valuation of open and occupied flanks") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);

  PartitionSet empty_parts;
  auto val = valuate(dts, empty_parts, cfg);
  CHECK(val.labels[3] == (kLabelSafe | kLabelHorizon));
  CHECK(val.labels[4] == (kLabelSafe | kLabelHorizon));
  CHECK(std::isinf(*val.coords[3].y));
  CHECK(val.labels[14] == 0);

  PartitionSet parts;
  parts.left.members = {{0.0, 0.8}};
  val = valuate(dts, parts, cfg);
  CHECK(val.labels[3] == kLabelSafe);  // 0.8 > d_min, lateral-only state
  CHECK(*val.coords[3].x == doctest::Approx(0.0));
  CHECK(*val.coords[3].y == doctest::Approx(0.8));

  // Within d_min the flank is neither safe nor horizon.
  parts.left.members = {{0.0, 0.5}};
  val = valuate(dts, parts, cfg);
  CHECK(val.labels[3] == 0);

  val = valuate(dts, open_corridor_parts(), cfg);
  for (const int id : {7, 8, 11, 12})
    CHECK(val.labels[static_cast<std::size_t>(id)] ==
          (kLabelSafe | kLabelHorizon));
  for (const int id : {0, 1, 2, 5, 6, 9, 10, 13})
    CHECK(val.labels[static_cast<std::size_t>(id)] == kLabelSafe);

  PartitionSet boxed = open_corridor_parts();
  boxed.boxed.pairs = {{{0.0, 0.5}, {0.0, -0.5}}};
  val = valuate(dts, boxed, cfg);
  CHECK(val.labels[14] == (kLabelSafe | kLabelHorizon));

  // Occupied longitudinal lane pins the lane end instead of the horizon.
  PartitionSet blocked = open_corridor_parts();
  blocked.left_pos.members = {{0.5, 0.1}};
  val = valuate(dts, blocked, cfg);
  CHECK(val.labels[7] == 0);
  CHECK(*val.coords[7].x == doctest::Approx(0.9));
}

TEST_CASE("nfa accepts exactly the safe-until-safe-horizon words") {
  const auto nfa = Nfa::negated_plan_property();
  CHECK(nfa.n_states == 2);
  CHECK(nfa.accepting == std::set<int>{1});

  const LabelSet sh = kLabelSafe | kLabelHorizon;
  CHECK(nfa.accepts({kLabelSafe, kLabelSafe, sh}));
  CHECK(nfa.accepts({sh}));
  CHECK(nfa.accepts({kLabelSafe, sh}));
  CHECK_FALSE(nfa.accepts({kLabelSafe, kLabelSafe}));        // never reaches horizon
  CHECK_FALSE(nfa.accepts({kLabelSafe, 0, sh}));             // unsafe gap kills it
  CHECK_FALSE(nfa.accepts({kLabelSafe, kLabelHorizon, sh})); // horizon alone is not safe
  CHECK_FALSE(nfa.accepts({kLabelSafe, sh, kLabelSafe}));    // must end on the horizon
  CHECK_FALSE(nfa.accepts({}));

  // A {safe, horizon} symbol forks: the run can loop in q0 and continue.
  CHECK(nfa.accepts({kLabelSafe, sh, sh}));
}

TEST_CASE("path language matches the nfa over every label assignment") {
  const auto nfa = Nfa::negated_plan_property();
  for (const auto& path : kTreePaths) {
    const std::size_t n = path.size();
    const std::size_t total = static_cast<std::size_t>(1) << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<LabelSet> word(n);
      for (std::size_t i = 0; i < n; ++i)
        word[i] = static_cast<LabelSet>((code >> (2 * i)) & 3);

      bool all_safe = true;
      for (const LabelSet sym : word)
        if ((sym & kLabelSafe) == 0) all_safe = false;
      const bool expected =
          all_safe && (word.back() & kLabelHorizon) != 0;
      CHECK(nfa.accepts(word) == expected);
    }
  }
}

TEST_CASE("product search on the open-corridor valuation") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);
  const auto nfa = Nfa::negated_plan_property();
  const auto val = valuate(dts, open_corridor_parts(), cfg);

  CHECK_FALSE(product_search(dts, val, nfa, {}).has_value());

  auto path = product_search(dts, val, nfa, {7, 11});
  REQUIRE(path.has_value());
  std::vector<int> states;
  for (const auto& [s, q] : path->nodes) states.push_back(s);
  CHECK(states == std::vector<int>{0, 1, 3, 5, 7});
  CHECK(path->nodes.back().second == 1);

  const auto plan = extract_plan(*path);
  CHECK(plan.tasks == std::vector<TaskKind>{TaskKind::TL, TaskKind::TS,
                                            TaskKind::TR, TaskKind::T0});

  // Right preference lands on the mirrored accepting path.
  SearchOptions right;
  right.prefer = Preference::Right;
  path = product_search(dts, val, nfa, {7, 11}, right);
  REQUIRE(path.has_value());
  states.clear();
  for (const auto& [s, q] : path->nodes) states.push_back(s);
  CHECK(states == std::vector<int>{0, 1, 3, 9, 11});
  CHECK(extract_plan(*path).tasks ==
        std::vector<TaskKind>{TaskKind::TL, TaskKind::TS, TaskKind::TL,
                              TaskKind::T0});

  CHECK_THROWS_AS(product_search(dts, val, nfa, {5}), std::invalid_argument);
}

TEST_CASE("horizon flank yields the two-step path") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);
  const auto nfa = Nfa::negated_plan_property();

  PartitionSet parts;  // both flanks open
  const auto val = valuate(dts, parts, cfg);

  const auto path = product_search(dts, val, nfa, {3});
  REQUIRE(path.has_value());
  std::vector<int> states;
  for (const auto& [s, q] : path->nodes) states.push_back(s);
  CHECK(states == std::vector<int>{0, 1, 3});

  // The straight edge resolves to T0 because s3 is a horizon state.
  const auto plan = extract_plan(*path);
  CHECK(plan.tasks == std::vector<TaskKind>{TaskKind::TL, TaskKind::T0});
}

TEST_CASE("boxed-in valuation yields the turn-around path") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);
  const auto nfa = Nfa::negated_plan_property();

  PartitionSet parts;
  parts.left.members = {{0.0, 0.4}};
  parts.right.members = {{0.0, -0.35}};
  parts.boxed = boxed_in(parts.left, parts.right, cfg.d_min);
  REQUIRE_FALSE(parts.boxed.pairs.empty());
  const auto val = valuate(dts, parts, cfg);

  const auto path = product_search(dts, val, nfa, {14});
  REQUIRE(path.has_value());
  std::vector<int> states;
  for (const auto& [s, q] : path->nodes) states.push_back(s);
  CHECK(states == std::vector<int>{0, 1, 13, 14});
  CHECK(extract_plan(*path).tasks ==
        std::vector<TaskKind>{TaskKind::TL, TaskKind::TL, TaskKind::T0});
}

TEST_CASE("extract_plan rejects malformed paths") {
  ProductPath path;
  CHECK_THROWS_AS(extract_plan(path), std::logic_error);

  path.nodes = {{0, 0}, {1, 0}, {3, 1}};
  path.tasks = {TaskKind::TL, TaskKind::TS};
  CHECK_THROWS_AS(extract_plan(path), std::logic_error);  // no trailing T0

  path.tasks = {TaskKind::TL};
  CHECK_THROWS_AS(extract_plan(path), std::logic_error);  // node/task mismatch
}

TEST_CASE("no accepting path alternates rotation directions") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);
  const auto nfa = Nfa::negated_plan_property();

  // Sweep every terminal subset over a family of valuations.
  std::vector<PartitionSet> families;
  families.push_back({});
  families.push_back(open_corridor_parts());
  {
    PartitionSet p;
    p.left.members = {{0.0, 0.4}};
    p.right.members = {{0.0, -0.35}};
    p.boxed = boxed_in(p.left, p.right, cfg.d_min);
    families.push_back(p);
  }
  {
    PartitionSet p = open_corridor_parts();
    p.left_pos.members = {{0.5, 0.0}};
    p.right_neg.members = {{-0.5, 0.0}};
    families.push_back(p);
  }

  const std::vector<int> allowed{3, 4, 7, 8, 11, 12, 14};
  for (const auto& parts : families) {
    const auto val = valuate(dts, parts, cfg);
    for (int mask = 0; mask < (1 << 7); ++mask) {
      std::set<int> terminals;
      for (int i = 0; i < 7; ++i)
        if (mask & (1 << i)) terminals.insert(allowed[static_cast<std::size_t>(i)]);
      const auto path = product_search(dts, val, nfa, terminals);
      if (!path.has_value()) continue;
      for (std::size_t i = 1; i < path->tasks.size(); ++i) {
        const bool flip =
            (path->tasks[i - 1] == TaskKind::TL && path->tasks[i] == TaskKind::TR) ||
            (path->tasks[i - 1] == TaskKind::TR && path->tasks[i] == TaskKind::TL);
        CHECK_FALSE(flip);
      }
      const auto plan = extract_plan(*path);
      CHECK(plan.tasks.back() == TaskKind::T0);
      CHECK(plan.tasks.size() >= 2);
      CHECK(plan.tasks.size() <= 4);
    }
  }
}

TEST_CASE("search is deterministic, including the seeded shuffle") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);
  const auto nfa = Nfa::negated_plan_property();
  const auto val = valuate(dts, open_corridor_parts(), cfg);

  for (const auto prefer :
       {Preference::Left, Preference::Right, Preference::SeededRandom}) {
    SearchOptions opts;
    opts.prefer = prefer;
    opts.seed = 99;
    const auto a = product_search(dts, val, nfa, {7, 8, 11, 12}, opts);
    const auto b = product_search(dts, val, nfa, {7, 8, 11, 12}, opts);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->nodes == b->nodes);
    CHECK(a->tasks == b->tasks);
  }
}

TEST_CASE("product dump golden trace") {
  const auto cfg = default_cfg();
  const auto dts = build_dts(cfg);
  const auto nfa = Nfa::negated_plan_property();
  const auto val = valuate(dts, open_corridor_parts(), cfg);

  const std::string want =
      "s0,q0 -TL-> s1,q0\n"
      "s0,q0 -TR-> s2,q0\n"
      "s1,q0 -TS-> s3,q0\n"
      "s1,q0 -TL-> s13,q0\n"
      "s2,q0 -TS-> s4,q0\n"
      "s2,q0 -TR-> s13,q0\n"
      "s3,q0 -TR-> s5,q0\n"
      "s3,q0 -TL-> s9,q0\n"
      "s4,q0 -TL-> s6,q0\n"
      "s4,q0 -TR-> s10,q0\n"
      "s5,q0 -T0-> s7,q0\n"
      "s5,q0 -T0-> s7,q1 *\n"
      "s6,q0 -T0-> s8,q0\n"
      "s6,q0 -T0-> s8,q1\n"
      "s9,q0 -T0-> s11,q0\n"
      "s9,q0 -T0-> s11,q1 *\n"
      "s10,q0 -T0-> s12,q0\n"
      "s10,q0 -T0-> s12,q1\n";
  CHECK(dump_product(dts, val, nfa, {7, 11}) == want);
}

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcplan/abstraction.hpp"
#include "mcplan/sensing.hpp"
#include "mcplan/tasks.hpp"

namespace mcplan {

// ---------------------------------------------------------------------------
// Disturbance transition system (DTS)
//
// A fixed 15-state tree describing where a single disturbance can sit
// relative to the robot after each task of a candidate sequence. States hold
// egocentric [x, y, heading] coordinates; x or y may be +/-infinity when the
// corresponding assessment lane is open (no disturbance within reach), and a
// lateral-only state has no meaningful longitudinal coordinate.
//
//   s0            initial, disturbance dead ahead at d_safe
//   s1/s2         after TL/TR: disturbance rotated to the right/left flank
//   s3/s4         after driving: nearest lateral disturbance (or open lane)
//   s5/s9, s6/s10 after turning toward/away from the lateral disturbance
//   s7/s11        left-branch longitudinal outcome (ahead/behind lane)
//   s8/s12        right-branch longitudinal outcome
//   s13/s14       turn-around branch used when boxed in
// ---------------------------------------------------------------------------

struct DtsState {
  int id = 0;
  std::optional<double> x;  // meters; may hold +/-infinity
  std::optional<double> y;
  double heading = 0.0;  // one of {0, pi/2, -pi/2, pi}
};

struct DtsEdge {
  int src = 0;
  int dst = 0;
  TaskKind task = TaskKind::T0;
  // s1->s3 and s2->s4 resolve to T0 when the target is a horizon state
  // (drive off into the open) and TS otherwise (drive up to the
  // disturbance); resolved against the valuation at search time.
  bool straight_outcome = false;
};

struct Dts {
  std::array<DtsState, 15> states{};
  std::vector<DtsEdge> edges;  // 15 edges, tree rooted at s0
  int initial = 0;

  // Children of `id` in canonical order (left subtree first at the root,
  // state-id enumeration order below).
  std::vector<const DtsEdge*> children(int id) const;
};

// Baseline structure with the cfg-derived fixed coordinates filled in.
Dts build_dts(const SafetyConfig& cfg);

// ---------------------------------------------------------------------------
// Valuation
// ---------------------------------------------------------------------------

using LabelSet = std::uint8_t;
inline constexpr LabelSet kLabelSafe = 1;
inline constexpr LabelSet kLabelHorizon = 2;

struct StateValue {
  std::optional<double> x;
  std::optional<double> y;
};

struct Valuation {
  std::array<LabelSet, 15> labels{};
  std::array<StateValue, 15> coords{};
};

// Everything one planning cycle abstracted out of a scan.
struct PartitionSet {
  LateralPartition left{Side::Left, {}};
  LateralPartition right{Side::Right, {}};
  BoxedInEvidence boxed;
  LongitudinalPartition left_pos{Side::Left, LongitudinalSign::Positive, {}};
  LongitudinalPartition left_neg{Side::Left, LongitudinalSign::Negative, {}};
  LongitudinalPartition right_pos{Side::Right, LongitudinalSign::Positive, {}};
  LongitudinalPartition right_neg{Side::Right, LongitudinalSign::Negative, {}};
};

// Instantiate the variable states from the partitions and label every state:
//
//   horizon  iff a coordinate is infinite; s14 is the exception and gets
//            {safe, horizon} exactly when the boxed-in evidence is non-empty
//            (the turn-around is only justified, and only safe, then).
//   safe     iff a finite coordinate's magnitude equals d_safe, or a
//            lateral-only state's finite |y| exceeds d_min, or horizon.
//
// Empty lateral partition: s3 (s4) gets y = +inf (-inf). Empty longitudinal
// partition: s7/s8 get x = +inf, s11/s12 x = -inf; occupied lanes pin the
// lane-end coordinate at +/-(d_safe + beta*d_safe) instead.
Valuation valuate(const Dts& dts, const PartitionSet& parts,
                  const SafetyConfig& cfg);

// ---------------------------------------------------------------------------
// NFA for the negated plan property
//
// The plan property is "not (safe until (safe and horizon))"; its negation
// accepts exactly the words that stay safe and end on a safe horizon. Two
// states: q0 loops on {safe} and steps to accepting q1 on {safe, horizon}.
// An edge fires when its guard is a subset of the input symbol, so a
// {safe, horizon} symbol genuinely forks the run. A symbol firing no edge
// kills the run.
// ---------------------------------------------------------------------------

struct NfaTransition {
  int from = 0;
  LabelSet guard = 0;
  int to = 0;
};

struct Nfa {
  int n_states = 0;
  int initial = 0;
  std::set<int> accepting;
  std::vector<NfaTransition> transitions;

  std::vector<int> step(int q, LabelSet symbol) const;
  // States reachable from the initial state on `word`, in order.
  std::set<int> run(const std::vector<LabelSet>& word) const;
  bool accepts(const std::vector<LabelSet>& word) const;

  static Nfa negated_plan_property();
};

// ---------------------------------------------------------------------------
// Product search
// ---------------------------------------------------------------------------

struct ProductPath {
  std::vector<std::pair<int, int>> nodes;  // (dts state, nfa state)
  std::vector<TaskKind> tasks;             // resolved edge labels
};

enum class Preference { Left, Right, SeededRandom };

struct SearchOptions {
  Preference prefer = Preference::Left;
  std::uint64_t seed = 0;
};

// Depth-first search over the on-the-fly product of the DTS and the NFA,
// starting from (s0, q0-after-reading-L(s0)). Accepts at the first node
// whose NFA state is accepting and whose DTS state is in `terminals`
// (subset of {s3, s4, s7, s8, s11, s12, s14}; throws otherwise). Preference
// fixes the child visit order: Left keeps the canonical order, Right
// reverses every child list, SeededRandom shuffles each list.
std::optional<ProductPath> product_search(const Dts& dts, const Valuation& val,
                                          const Nfa& nfa,
                                          const std::set<int>& terminals,
                                          const SearchOptions& opts = {});

// Plan = the edge labels along the accepting path; the final hop into the
// terminal is structurally T0. Throws std::logic_error if the path does not
// end in T0 or has fewer than 2 or more than 4 tasks.
Plan extract_plan(const ProductPath& path);

// One line per live product edge, canonical order, accepting targets
// marked; for golden-trace tests.
std::string dump_product(const Dts& dts, const Valuation& val, const Nfa& nfa,
                         const std::set<int>& terminals);

}  // namespace mcplan

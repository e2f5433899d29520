#include "mcplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mcplan {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_lateral_only(int id) { return id == 3 || id == 4; }

}  // namespace

std::vector<const DtsEdge*> Dts::children(int id) const {
  std::vector<const DtsEdge*> out;
  for (const auto& e : edges)
    if (e.src == id) out.push_back(&e);
  return out;
}

Dts build_dts(const SafetyConfig& cfg) {
  Dts dts;
  const double ds = cfg.d_safe;
  const double reach = cfg.long_reach();

  auto state = [&](int id, std::optional<double> x, std::optional<double> y,
                   double heading) {
    dts.states[static_cast<std::size_t>(id)] = DtsState{id, x, y, heading};
  };

  state(0, ds, 0.0, 0.0);
  state(1, 0.0, ds, kPi / 2);
  state(2, 0.0, -ds, -kPi / 2);
  state(3, 0.0, std::nullopt, kPi / 2);
  state(4, 0.0, std::nullopt, -kPi / 2);
  state(5, ds, std::nullopt, 0.0);
  state(6, ds, std::nullopt, 0.0);
  state(7, std::nullopt, std::nullopt, 0.0);
  state(8, std::nullopt, std::nullopt, 0.0);
  state(9, -ds, std::nullopt, kPi);
  state(10, -ds, std::nullopt, kPi);
  state(11, std::nullopt, std::nullopt, kPi);
  state(12, std::nullopt, std::nullopt, kPi);
  state(13, -ds, 0.0, kPi);
  state(14, -reach, 0.0, kPi);

  // Insertion order is the canonical child order.
  dts.edges = {
      {0, 1, TaskKind::TL, false},  {0, 2, TaskKind::TR, false},
      {1, 3, TaskKind::TS, true},   {1, 13, TaskKind::TL, false},
      {2, 4, TaskKind::TS, true},   {2, 13, TaskKind::TR, false},
      {3, 5, TaskKind::TR, false},  {3, 9, TaskKind::TL, false},
      {4, 6, TaskKind::TL, false},  {4, 10, TaskKind::TR, false},
      {5, 7, TaskKind::T0, false},  {6, 8, TaskKind::T0, false},
      {9, 11, TaskKind::T0, false}, {10, 12, TaskKind::T0, false},
      {13, 14, TaskKind::T0, false},
  };
  return dts;
}

Valuation valuate(const Dts& dts, const PartitionSet& parts,
                  const SafetyConfig& cfg) {
  Valuation val;
  const double ds = cfg.d_safe;
  const double reach = cfg.long_reach();

  std::optional<double> dl, dr;  // nearest lateral disturbance per side
  if (!parts.left.members.empty()) dl = parts.left.members.front().y;
  if (!parts.right.members.empty()) dr = parts.right.members.front().y;
  const std::optional<double> delta_l =
      dl.has_value() ? std::optional<double>(*dl - ds) : std::nullopt;
  const std::optional<double> delta_r =
      dr.has_value() ? std::optional<double>(*dr + ds) : std::nullopt;

  auto coord = [&](int id, std::optional<double> x, std::optional<double> y) {
    val.coords[static_cast<std::size_t>(id)] = StateValue{x, y};
  };

  coord(0, ds, 0.0);
  coord(1, 0.0, ds);
  coord(2, 0.0, -ds);
  coord(3, 0.0, dl.has_value() ? *dl : kInf);
  coord(4, 0.0, dr.has_value() ? *dr : -kInf);
  coord(5, ds, delta_l);
  coord(9, -ds, delta_l);
  coord(6, ds, delta_r);
  coord(10, -ds, delta_r);
  coord(7, parts.left_pos.members.empty() ? kInf : reach, delta_l);
  coord(11, parts.left_neg.members.empty() ? -kInf : -reach, delta_l);
  coord(8, parts.right_pos.members.empty() ? kInf : reach, delta_r);
  coord(12, parts.right_neg.members.empty() ? -kInf : -reach, delta_r);
  coord(13, -ds, 0.0);
  coord(14, -reach, 0.0);

  for (int id = 0; id < 15; ++id) {
    if (id == 14) {
      // The turn-around target is reachable-and-safe exactly when the robot
      // is boxed in; otherwise it stays unlabeled and kills any run into it.
      val.labels[14] = parts.boxed.pairs.empty()
                           ? LabelSet{0}
                           : LabelSet(kLabelSafe | kLabelHorizon);
      continue;
    }
    const auto& c = val.coords[static_cast<std::size_t>(id)];
    const bool horizon = (c.x.has_value() && std::isinf(*c.x)) ||
                         (c.y.has_value() && std::isinf(*c.y));
    bool safe = horizon;
    if (!safe && c.x.has_value() && std::isfinite(*c.x) &&
        std::abs(*c.x) == ds)
      safe = true;
    if (!safe && c.y.has_value() && std::isfinite(*c.y) &&
        std::abs(*c.y) == ds)
      safe = true;
    if (!safe && is_lateral_only(id) && c.y.has_value() &&
        std::isfinite(*c.y) && std::abs(*c.y) > cfg.d_min)
      safe = true;
    val.labels[static_cast<std::size_t>(id)] =
        LabelSet((safe ? kLabelSafe : 0) | (horizon ? kLabelHorizon : 0));
  }
  (void)dts;
  return val;
}

std::vector<int> Nfa::step(int q, LabelSet symbol) const {
  std::vector<int> out;
  for (const auto& t : transitions)
    if (t.from == q && (t.guard & symbol) == t.guard) out.push_back(t.to);
  return out;
}

std::set<int> Nfa::run(const std::vector<LabelSet>& word) const {
  std::set<int> current{initial};
  for (const LabelSet sym : word) {
    std::set<int> next;
    for (const int q : current)
      for (const int r : step(q, sym)) next.insert(r);
    current = std::move(next);
  }
  return current;
}

bool Nfa::accepts(const std::vector<LabelSet>& word) const {
  for (const int q : run(word))
    if (accepting.count(q) != 0) return true;
  return false;
}

Nfa Nfa::negated_plan_property() {
  Nfa nfa;
  nfa.n_states = 2;
  nfa.initial = 0;
  nfa.accepting = {1};
  nfa.transitions = {
      {0, kLabelSafe, 0},
      {0, LabelSet(kLabelSafe | kLabelHorizon), 1},
  };
  return nfa;
}

namespace {

TaskKind resolve_task(const DtsEdge& e, const Valuation& val) {
  if (!e.straight_outcome) return e.task;
  return (val.labels[static_cast<std::size_t>(e.dst)] & kLabelHorizon) != 0
             ? TaskKind::T0
             : TaskKind::TS;
}

struct Searcher {
  const Dts& dts;
  const Valuation& val;
  const Nfa& nfa;
  const std::set<int>& terminals;
  const SearchOptions& opts;
  std::mt19937_64 rng;

  std::vector<const DtsEdge*> ordered_children(int id) {
    auto kids = dts.children(id);
    if (opts.prefer == Preference::Right)
      std::reverse(kids.begin(), kids.end());
    else if (opts.prefer == Preference::SeededRandom)
      std::shuffle(kids.begin(), kids.end(), rng);
    return kids;
  }

  bool dfs(int s, int q, ProductPath& path) {
    if (nfa.accepting.count(q) != 0 && terminals.count(s) != 0) return true;
    for (const DtsEdge* e : ordered_children(s)) {
      const TaskKind task = resolve_task(*e, val);
      const LabelSet symbol = val.labels[static_cast<std::size_t>(e->dst)];
      for (const int q2 : nfa.step(q, symbol)) {
        path.nodes.emplace_back(e->dst, q2);
        path.tasks.push_back(task);
        if (dfs(e->dst, q2, path)) return true;
        path.nodes.pop_back();
        path.tasks.pop_back();
      }
    }
    return false;
  }
};

}  // namespace

std::optional<ProductPath> product_search(const Dts& dts, const Valuation& val,
                                          const Nfa& nfa,
                                          const std::set<int>& terminals,
                                          const SearchOptions& opts) {
  static const std::set<int> kAllowed{3, 4, 7, 8, 11, 12, 14};
  for (const int t : terminals)
    if (kAllowed.count(t) == 0)
      throw std::invalid_argument("product_search: s" + std::to_string(t) +
                                  " cannot terminate a path");

  Searcher searcher{dts, val, nfa, terminals, opts,
                    std::mt19937_64{opts.seed}};
  const LabelSet first = val.labels[static_cast<std::size_t>(dts.initial)];
  for (const int q : nfa.step(nfa.initial, first)) {
    ProductPath path;
    path.nodes.emplace_back(dts.initial, q);
    if (searcher.dfs(dts.initial, q, path)) return path;
  }
  return std::nullopt;
}

Plan extract_plan(const ProductPath& path) {
  if (path.tasks.empty() || path.nodes.size() != path.tasks.size() + 1)
    throw std::logic_error("extract_plan: malformed path");
  if (path.tasks.back() != TaskKind::T0)
    throw std::logic_error("extract_plan: path does not end in T0");
  if (path.tasks.size() < 2 || path.tasks.size() > 4)
    throw std::logic_error("extract_plan: plan length outside {2,3,4}");
  return Plan{path.tasks, 0};
}

std::string dump_product(const Dts& dts, const Valuation& val, const Nfa& nfa,
                         const std::set<int>& terminals) {
  // Live product nodes, found by forward closure from the initial node.
  std::set<std::pair<int, int>> reachable;
  std::vector<std::pair<int, int>> frontier;
  const LabelSet first = val.labels[static_cast<std::size_t>(dts.initial)];
  for (const int q : nfa.step(nfa.initial, first)) {
    reachable.emplace(dts.initial, q);
    frontier.emplace_back(dts.initial, q);
  }
  while (!frontier.empty()) {
    const auto [s, q] = frontier.back();
    frontier.pop_back();
    for (const DtsEdge* e : dts.children(s)) {
      const LabelSet symbol = val.labels[static_cast<std::size_t>(e->dst)];
      for (const int q2 : nfa.step(q, symbol)) {
        if (reachable.emplace(e->dst, q2).second)
          frontier.emplace_back(e->dst, q2);
      }
    }
  }

  std::ostringstream out;
  for (const auto& [s, q] : reachable) {
    for (const DtsEdge* e : dts.children(s)) {
      const TaskKind task = resolve_task(*e, val);
      const LabelSet symbol = val.labels[static_cast<std::size_t>(e->dst)];
      for (const int q2 : nfa.step(q, symbol)) {
        out << 's' << s << ",q" << q << " -" << to_string(task) << "-> s"
            << e->dst << ",q" << q2;
        if (nfa.accepting.count(q2) != 0 && terminals.count(e->dst) != 0)
          out << " *";
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace mcplan

// Python bindings for the planning core. Thin: plain structs map to
// attribute access, RNG-taking functions take a seed instead.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <random>
#include <sstream>

#include "mcplan/abstraction.hpp"
#include "mcplan/harness.hpp"
#include "mcplan/model.hpp"
#include "mcplan/planner.hpp"
#include "mcplan/scenario.hpp"
#include "mcplan/sensing.hpp"
#include "mcplan/sim.hpp"
#include "mcplan/tasks.hpp"

namespace py = pybind11;
using namespace mcplan;

namespace {

std::vector<std::optional<double>> coord_column(const Valuation& val,
                                                bool want_x) {
  std::vector<std::optional<double>> out;
  out.reserve(val.coords.size());
  for (const auto& c : val.coords) out.push_back(want_x ? c.x : c.y);
  return out;
}

std::string plan_repr(const Plan& plan) {
  std::ostringstream os;
  os << "Plan([";
  for (std::size_t i = 0; i < plan.tasks.size(); ++i) {
    if (i) os << ", ";
    os << to_string(plan.tasks[i]);
  }
  os << "], cursor=" << plan.cursor << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_mcplan, m) {
  m.doc() = "Scan abstraction, transition-system planning and closed-loop "
            "simulation for a disc robot with a 2D LiDAR.";

  // ---- sensing ----------------------------------------------------------
  py::class_<Observation>(m, "Observation")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Observation{x, y}; }),
           py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Observation::x)
      .def_readwrite("y", &Observation::y)
      .def("__eq__",
           [](const Observation& a, const Observation& b) { return a == b; })
      .def("__repr__", [](const Observation& o) {
        std::ostringstream os;
        os << "Observation(" << o.x << ", " << o.y << ")";
        return os.str();
      });

  py::class_<PointCloud>(m, "PointCloud")
      .def(py::init<>())
      .def(py::init([](const std::vector<std::pair<double, double>>& pts,
                       std::int64_t timestamp_ms) {
             PointCloud c;
             c.timestamp_ms = timestamp_ms;
             c.observations.reserve(pts.size());
             for (auto& [x, y] : pts) c.observations.push_back({x, y});
             return c;
           }),
           py::arg("points"), py::arg("timestamp_ms") = 0)
      .def_readwrite("observations", &PointCloud::observations)
      .def_readwrite("timestamp_ms", &PointCloud::timestamp_ms)
      .def("__len__",
           [](const PointCloud& c) { return c.observations.size(); });

  py::enum_<DisturbanceKind>(m, "DisturbanceKind")
      .value("Front", DisturbanceKind::Front)
      .value("Left", DisturbanceKind::Left)
      .value("Right", DisturbanceKind::Right);

  py::class_<Disturbance>(m, "Disturbance")
      .def(py::init<>())
      .def_readwrite("x", &Disturbance::x)
      .def_readwrite("y", &Disturbance::y)
      .def_readwrite("kind", &Disturbance::kind);

  py::class_<SafetyConfig>(m, "SafetyConfig")
      .def(py::init<>())
      .def_readwrite("d_safe", &SafetyConfig::d_safe)
      .def_readwrite("v", &SafetyConfig::v)
      .def_readwrite("dt", &SafetyConfig::dt)
      .def_readwrite("tol", &SafetyConfig::tol)
      .def_readwrite("L", &SafetyConfig::L)
      .def_readwrite("d_max", &SafetyConfig::d_max)
      .def_readwrite("d_min", &SafetyConfig::d_min)
      .def_readwrite("beta", &SafetyConfig::beta)
      .def_readwrite("d_look", &SafetyConfig::d_look)
      .def("shield_reach", &SafetyConfig::shield_reach)
      .def("half_width", &SafetyConfig::half_width)
      .def("long_reach", &SafetyConfig::long_reach)
      .def("validate", &SafetyConfig::validate);

  m.def("partition_safe", &partition_safe, py::arg("cloud"), py::arg("cfg"));
  m.def("partition_shield", &partition_shield, py::arg("cloud"),
        py::arg("cfg"));
  m.def("partition_look", &partition_look, py::arg("cloud"), py::arg("cfg"),
        py::arg("d_look"));
  m.def("nearest_front", &nearest_front, py::arg("observations"),
        py::arg("kind") = DisturbanceKind::Front);

  // ---- abstraction ------------------------------------------------------
  py::enum_<Side>(m, "Side")
      .value("Left", Side::Left)
      .value("Right", Side::Right);

  py::enum_<LongitudinalSign>(m, "LongitudinalSign")
      .value("Positive", LongitudinalSign::Positive)
      .value("Negative", LongitudinalSign::Negative);

  py::class_<LateralPartition>(m, "LateralPartition")
      .def_readonly("side", &LateralPartition::side)
      .def_readonly("members", &LateralPartition::members);

  py::class_<LongitudinalPartition>(m, "LongitudinalPartition")
      .def_readonly("lateral_side", &LongitudinalPartition::lateral_side)
      .def_readonly("sign", &LongitudinalPartition::sign)
      .def_readonly("members", &LongitudinalPartition::members);

  py::class_<BoxedInEvidence>(m, "BoxedInEvidence")
      .def_readonly("pairs", &BoxedInEvidence::pairs);

  m.def("construct_lateral", &construct_lateral, py::arg("cloud"),
        py::arg("d_safe"), py::arg("d_max"), py::arg("left"));
  m.def("construct_longitudinal", &construct_longitudinal, py::arg("cloud"),
        py::arg("lateral_side"), py::arg("delta"), py::arg("d_safe"),
        py::arg("beta"), py::arg("width"), py::arg("positive"));
  m.def("boxed_in", &boxed_in, py::arg("left"), py::arg("right"),
        py::arg("d_min"));

  // ---- tasks / plans ----------------------------------------------------
  py::enum_<TaskKind>(m, "TaskKind")
      .value("T0", TaskKind::T0)
      .value("TS", TaskKind::TS)
      .value("TL", TaskKind::TL)
      .value("TR", TaskKind::TR);

  py::class_<Plan>(m, "Plan")
      .def(py::init<>())
      .def_readwrite("tasks", &Plan::tasks)
      .def_readwrite("cursor", &Plan::cursor)
      .def("__repr__", &plan_repr);

  m.def("wrap_angle", &wrap_angle, py::arg("a"));

  // ---- model ------------------------------------------------------------
  py::class_<Dts>(m, "Dts")
      .def_property_readonly("n_states",
                             [](const Dts& d) { return d.states.size(); })
      .def_property_readonly("n_edges",
                             [](const Dts& d) { return d.edges.size(); })
      .def_readonly("initial", &Dts::initial);

  m.def("build_dts", &build_dts, py::arg("cfg"));

  py::class_<PartitionSet>(m, "PartitionSet")
      .def(py::init<>())
      .def_readwrite("left", &PartitionSet::left)
      .def_readwrite("right", &PartitionSet::right)
      .def_readwrite("boxed", &PartitionSet::boxed)
      .def_readwrite("left_pos", &PartitionSet::left_pos)
      .def_readwrite("left_neg", &PartitionSet::left_neg)
      .def_readwrite("right_pos", &PartitionSet::right_pos)
      .def_readwrite("right_neg", &PartitionSet::right_neg);

  py::class_<Valuation>(m, "Valuation")
      .def_property_readonly("labels",
                             [](const Valuation& v) {
                               return std::vector<int>(v.labels.begin(),
                                                       v.labels.end());
                             })
      .def_property_readonly(
          "xs", [](const Valuation& v) { return coord_column(v, true); })
      .def_property_readonly(
          "ys", [](const Valuation& v) { return coord_column(v, false); });

  m.attr("LABEL_SAFE") = int(kLabelSafe);
  m.attr("LABEL_HORIZON") = int(kLabelHorizon);

  m.def("valuate", &valuate, py::arg("dts"), py::arg("partitions"),
        py::arg("cfg"));

  py::class_<Nfa>(m, "Nfa")
      .def_static("negated_plan_property", &Nfa::negated_plan_property)
      .def("accepts",
           [](const Nfa& n, const std::vector<int>& word) {
             std::vector<LabelSet> w(word.begin(), word.end());
             return n.accepts(w);
           },
           py::arg("word"));

  py::class_<ProductPath>(m, "ProductPath")
      .def_readonly("nodes", &ProductPath::nodes)
      .def_readonly("tasks", &ProductPath::tasks);

  py::enum_<Preference>(m, "Preference")
      .value("Left", Preference::Left)
      .value("Right", Preference::Right)
      .value("SeededRandom", Preference::SeededRandom);

  py::class_<SearchOptions>(m, "SearchOptions")
      .def(py::init<>())
      .def_readwrite("prefer", &SearchOptions::prefer)
      .def_readwrite("seed", &SearchOptions::seed);

  m.def("product_search", &product_search, py::arg("dts"), py::arg("valuation"),
        py::arg("nfa"), py::arg("terminals"),
        py::arg("options") = SearchOptions{});
  m.def("extract_plan", &extract_plan, py::arg("path"));
  m.def("dump_product", &dump_product, py::arg("dts"), py::arg("valuation"),
        py::arg("nfa"), py::arg("terminals"));

  // ---- planner ----------------------------------------------------------
  py::class_<PlanRequest>(m, "PlanRequest")
      .def(py::init<>())
      .def_readwrite("cloud", &PlanRequest::cloud)
      .def_readwrite("d_plus", &PlanRequest::d_plus)
      .def_readwrite("cfg", &PlanRequest::cfg);

  py::class_<PlanResult>(m, "PlanResult")
      .def_readonly("plan", &PlanResult::plan)
      .def_readonly("terminals", &PlanResult::terminals)
      .def_readonly("latency_ms", &PlanResult::latency_ms)
      .def_readonly("delta_plus", &PlanResult::delta_plus)
      .def_readonly("branch", &PlanResult::branch)
      .def_readonly("partitions", &PlanResult::partitions)
      .def_readonly("path", &PlanResult::path);

  m.def("plan_generate", &plan_generate, py::arg("request"),
        py::arg("options") = SearchOptions{});

  // ---- sim --------------------------------------------------------------
  py::class_<Segment>(m, "Segment")
      .def(py::init<>())
      .def(py::init([](double x1, double y1, double x2, double y2) {
             return Segment{x1, y1, x2, y2};
           }),
           py::arg("x1"), py::arg("y1"), py::arg("x2"), py::arg("y2"))
      .def_readwrite("x1", &Segment::x1)
      .def_readwrite("y1", &Segment::y1)
      .def_readwrite("x2", &Segment::x2)
      .def_readwrite("y2", &Segment::y2);

  py::class_<WorldModel>(m, "WorldModel")
      .def(py::init<>())
      .def(py::init([](const std::vector<std::array<double, 4>>& segs) {
             WorldModel w;
             w.segments.reserve(segs.size());
             for (auto& s : segs) w.segments.push_back({s[0], s[1], s[2], s[3]});
             return w;
           }),
           py::arg("segments"))
      .def_readwrite("segments", &WorldModel::segments);

  py::class_<RobotState>(m, "RobotState")
      .def(py::init<>())
      .def(py::init([](double x, double y, double theta, double r) {
             return RobotState{x, y, theta, r};
           }),
           py::arg("x"), py::arg("y"), py::arg("theta") = 0.0,
           py::arg("footprint_radius") = 0.13)
      .def_readwrite("x", &RobotState::x)
      .def_readwrite("y", &RobotState::y)
      .def_readwrite("theta", &RobotState::theta)
      .def_readwrite("footprint_radius", &RobotState::footprint_radius);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("epsilon_long", &NoiseModel::epsilon_long)
      .def_readwrite("range_noise", &NoiseModel::range_noise)
      .def_readwrite("veer", &NoiseModel::veer);

  py::class_<MotionCommand> motion(m, "MotionCommand");
  py::enum_<MotionCommand::Kind>(motion, "Kind")
      .value("Straight", MotionCommand::Kind::Straight)
      .value("Rotate", MotionCommand::Kind::Rotate);
  motion.def(py::init<>())
      .def_readwrite("kind", &MotionCommand::kind)
      .def_readwrite("speed", &MotionCommand::speed);

  m.def(
      "raycast_scan",
      [](const WorldModel& world, const RobotState& robot, int n_beams,
         double max_range, double range_noise, std::uint64_t seed,
         std::int64_t timestamp_ms) {
        if (range_noise > 0.0) {
          std::mt19937_64 rng(seed);
          return raycast_scan(world, robot, n_beams, max_range, range_noise,
                              &rng, timestamp_ms);
        }
        return raycast_scan(world, robot, n_beams, max_range, 0.0, nullptr,
                            timestamp_ms);
      },
      py::arg("world"), py::arg("robot"), py::arg("n_beams") = 360,
      py::arg("max_range") = 6.0, py::arg("range_noise") = 0.0,
      py::arg("seed") = 0, py::arg("timestamp_ms") = 0);

  m.def(
      "step_kinematics",
      [](const RobotState& robot, const MotionCommand& cmd, double dt,
         const NoiseModel& noise, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return step_kinematics(robot, cmd, dt, noise, rng);
      },
      py::arg("robot"), py::arg("command"), py::arg("dt"), py::arg("noise"),
      py::arg("seed") = 0);

  m.def("check_collision", &check_collision, py::arg("world"),
        py::arg("robot"));

  // ---- scenario / harness -----------------------------------------------
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<SimParams>(m, "SimParams")
      .def(py::init<>())
      .def_readwrite("n_beams", &SimParams::n_beams)
      .def_readwrite("max_range", &SimParams::max_range)
      .def_readwrite("omega", &SimParams::omega)
      .def_readwrite("footprint_radius", &SimParams::footprint_radius);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("safety", &RunConfig::safety)
      .def_readwrite("noise", &RunConfig::noise)
      .def_readwrite("sim", &RunConfig::sim)
      .def("validate", &RunConfig::validate);

  py::class_<CutoffLine>(m, "CutoffLine")
      .def(py::init<>())
      .def_readwrite("x1", &CutoffLine::x1)
      .def_readwrite("y1", &CutoffLine::y1)
      .def_readwrite("x2", &CutoffLine::x2)
      .def_readwrite("y2", &CutoffLine::y2)
      .def_readwrite("inside_sign", &CutoffLine::inside_sign)
      .def_readwrite("valid", &CutoffLine::valid)
      .def("signed_offset", &CutoffLine::signed_offset, py::arg("x"),
           py::arg("y"))
      .def("inside", &CutoffLine::inside, py::arg("x"), py::arg("y"));

  py::class_<ScenarioSpec>(m, "ScenarioSpec")
      .def_readonly("name", &ScenarioSpec::name)
      .def_readonly("world", &ScenarioSpec::world)
      .def_readonly("start_poses", &ScenarioSpec::start_poses)
      .def_readonly("cutoff", &ScenarioSpec::cutoff)
      .def_readonly("exit_on_cutoff", &ScenarioSpec::exit_on_cutoff)
      .def_readonly("duration_s", &ScenarioSpec::duration_s)
      .def_readonly("config", &ScenarioSpec::config);

  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("apply_config_file", &apply_config_file, py::arg("path"),
        py::arg("base"));

  py::enum_<AgentKind>(m, "AgentKind")
      .value("Baseline", AgentKind::Baseline)
      .value("Mc", AgentKind::Mc);

  py::class_<Pose>(m, "Pose")
      .def_readonly("t", &Pose::t)
      .def_readonly("x", &Pose::x)
      .def_readonly("y", &Pose::y)
      .def_readonly("theta", &Pose::theta);

  py::class_<TaskEvent>(m, "TaskEvent")
      .def_readonly("t", &TaskEvent::t)
      .def_readonly("from_task", &TaskEvent::from)
      .def_readonly("to_task", &TaskEvent::to)
      .def_readonly("reason", &TaskEvent::reason);

  py::class_<PlanEvent>(m, "PlanEvent")
      .def_readonly("t", &PlanEvent::t)
      .def_readonly("result", &PlanEvent::result);

  py::class_<CollisionEvent>(m, "CollisionEvent")
      .def_readonly("t", &CollisionEvent::t)
      .def_readonly("x", &CollisionEvent::x)
      .def_readonly("y", &CollisionEvent::y);

  py::class_<RunTrace>(m, "RunTrace")
      .def_readonly("scenario_name", &RunTrace::scenario_name)
      .def_readonly("agent", &RunTrace::agent)
      .def_readonly("seed", &RunTrace::seed)
      .def_readonly("config", &RunTrace::config)
      .def_readonly("cutoff", &RunTrace::cutoff)
      .def_readonly("poses", &RunTrace::poses)
      .def_readonly("task_events", &RunTrace::task_events)
      .def_readonly("plan_events", &RunTrace::plan_events)
      .def_readonly("collisions", &RunTrace::collisions)
      .def_readonly("stopped", &RunTrace::stopped)
      .def_readonly("stop_reason", &RunTrace::stop_reason)
      .def_readonly("safe_zone_violations", &RunTrace::safe_zone_violations);

  py::class_<LatencyStats>(m, "LatencyStats")
      .def_readonly("count", &LatencyStats::count)
      .def_readonly("min_ms", &LatencyStats::min_ms)
      .def_readonly("max_ms", &LatencyStats::max_ms)
      .def_readonly("mean_ms", &LatencyStats::mean_ms);

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("trajectory_length", &Metrics::trajectory_length)
      .def_readonly("in_culdesac_length", &Metrics::in_culdesac_length)
      .def_readonly("in_culdesac_time", &Metrics::in_culdesac_time)
      .def_readonly("culdesac_visits", &Metrics::culdesac_visits)
      .def_readonly("collisions", &Metrics::collisions)
      .def_readonly("latency_by_plan_len", &Metrics::latency_by_plan_len)
      .def_readonly("latency_overall", &Metrics::latency_overall);

  py::class_<RunOptions>(m, "RunOptions")
      .def(py::init<>())
      .def_readwrite("agent", &RunOptions::agent)
      .def_readwrite("seed", &RunOptions::seed)
      .def_readwrite("duration_s", &RunOptions::duration_s)
      .def_readwrite("prefer", &RunOptions::prefer)
      .def_readwrite("start_pose", &RunOptions::start_pose);

  m.def("run_loop", &run_loop, py::arg("world"), py::arg("start"),
        py::arg("config"), py::arg("options"), py::arg("cutoff") = CutoffLine{},
        py::arg("exit_on_cutoff") = false, py::arg("scenario_name") = "",
        py::call_guard<py::gil_scoped_release>());
  m.def("run_scenario", &run_scenario, py::arg("scenario"), py::arg("options"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compute_metrics", &compute_metrics, py::arg("trace"));
  m.def("export_run", &export_run, py::arg("trace"), py::arg("metrics"),
        py::arg("out_dir"));
  m.def("load_trace", &load_trace, py::arg("path"));
  m.def("make_random_room", &make_random_room, py::arg("seed"),
        py::arg("half") = 2.0, py::arg("clearance") = 1.2);
}

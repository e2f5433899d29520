#include "mcplan/scenario.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace mcplan {

using nlohmann::json;

void RunConfig::validate() const {
  try {
    safety.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (sim.n_beams <= 0) throw ConfigError("sim.n_beams must be positive");
  if (!(sim.max_range > 0.0)) throw ConfigError("sim.max_range must be positive");
  if (!(sim.omega > 0.0)) throw ConfigError("sim.omega must be positive");
  if (!(sim.footprint_radius > 0.0))
    throw ConfigError("sim.footprint_radius must be positive");
  if (!(sim.footprint_radius < safety.d_safe))
    throw ConfigError("sim.footprint_radius must be below safety.d_safe");
  if (noise.epsilon_long < 0.0)
    throw ConfigError("noise.epsilon_long must be non-negative");
  if (noise.range_noise < 0.0)
    throw ConfigError("noise.range_noise must be non-negative");
}

double CutoffLine::signed_offset(double px, double py) const {
  const double ex = x2 - x1, ey = y2 - y1;
  const double len = std::sqrt(ex * ex + ey * ey);
  if (len == 0.0) return 0.0;
  return (ex * (py - y1) - ey * (px - x1)) / len;
}

bool CutoffLine::inside(double px, double py) const {
  if (!valid) return false;
  const double off = signed_offset(px, py);
  return inside_sign > 0 ? off > 0.0 : off < 0.0;
}

namespace {

[[noreturn]] void fail(const std::string& file, const std::string& field,
                       const std::string& what) {
  throw ConfigError(file + ": field '" + field + "': " + what);
}

double number_at(const json& j, const std::string& file,
                 const std::string& field) {
  if (!j.is_number()) fail(file, field, "expected a number");
  return j.get<double>();
}

void parse_config_block(const json& j, const std::string& file,
                        RunConfig& cfg) {
  static const char* kBlocks[] = {"safety", "noise", "sim"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* b : kBlocks) known = known || key == b;
    if (!known) fail(file, "config." + key, "unknown block");
    if (!value.is_object()) fail(file, "config." + key, "expected an object");
  }
  if (j.contains("safety")) {
    for (const auto& [key, value] : j["safety"].items()) {
      const double x = number_at(value, file, "safety." + key);
      SafetyConfig& s = cfg.safety;
      if (key == "d_safe") s.d_safe = x;
      else if (key == "v") s.v = x;
      else if (key == "dt") s.dt = x;
      else if (key == "tol") s.tol = x;
      else if (key == "L") s.L = x;
      else if (key == "d_max") s.d_max = x;
      else if (key == "d_min") s.d_min = x;
      else if (key == "beta") s.beta = x;
      else if (key == "d_look") s.d_look = x;
      else fail(file, "safety." + key, "unknown parameter");
    }
  }
  if (j.contains("noise")) {
    for (const auto& [key, value] : j["noise"].items()) {
      const double x = number_at(value, file, "noise." + key);
      if (key == "epsilon_long") cfg.noise.epsilon_long = x;
      else if (key == "range_noise") cfg.noise.range_noise = x;
      else if (key == "veer") cfg.noise.veer = x;
      else fail(file, "noise." + key, "unknown parameter");
    }
  }
  if (j.contains("sim")) {
    for (const auto& [key, value] : j["sim"].items()) {
      const double x = number_at(value, file, "sim." + key);
      if (key == "n_beams") cfg.sim.n_beams = static_cast<int>(x);
      else if (key == "max_range") cfg.sim.max_range = x;
      else if (key == "omega") cfg.sim.omega = x;
      else if (key == "footprint_radius") cfg.sim.footprint_radius = x;
      else fail(file, "sim." + key, "unknown parameter");
    }
  }
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace

ScenarioSpec load_scenario(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");

  ScenarioSpec spec;
  spec.name = j.value("name", std::string{"scenario"});

  if (!j.contains("segments") || !j["segments"].is_array())
    fail(path, "segments", "expected an array of [x1,y1,x2,y2]");
  for (std::size_t i = 0; i < j["segments"].size(); ++i) {
    const auto& s = j["segments"][i];
    const std::string field = "segments[" + std::to_string(i) + "]";
    if (!s.is_array() || s.size() != 4) fail(path, field, "expected 4 numbers");
    spec.world.segments.push_back(Segment{
        number_at(s[0], path, field), number_at(s[1], path, field),
        number_at(s[2], path, field), number_at(s[3], path, field)});
  }

  if (!j.contains("start_poses") || !j["start_poses"].is_object() ||
      j["start_poses"].empty())
    fail(path, "start_poses", "expected a non-empty object of name -> [x,y,theta]");
  for (const auto& [name, pose] : j["start_poses"].items()) {
    const std::string field = "start_poses." + name;
    if (!pose.is_array() || pose.size() != 3)
      fail(path, field, "expected [x, y, theta]");
    spec.start_poses[name] = {number_at(pose[0], path, field),
                              number_at(pose[1], path, field),
                              number_at(pose[2], path, field)};
  }

  if (j.contains("cutoff")) {
    const auto& c = j["cutoff"];
    if (!c.is_object() || !c.contains("line") || !c["line"].is_array() ||
        c["line"].size() != 4)
      fail(path, "cutoff", "expected {\"line\": [x1,y1,x2,y2], \"inside\": ...}");
    spec.cutoff.x1 = number_at(c["line"][0], path, "cutoff.line");
    spec.cutoff.y1 = number_at(c["line"][1], path, "cutoff.line");
    spec.cutoff.x2 = number_at(c["line"][2], path, "cutoff.line");
    spec.cutoff.y2 = number_at(c["line"][3], path, "cutoff.line");
    const std::string side = c.value("inside", std::string{"negative"});
    if (side != "negative" && side != "positive")
      fail(path, "cutoff.inside", "expected \"negative\" or \"positive\"");
    spec.cutoff.inside_sign = side == "negative" ? -1 : 1;
    spec.cutoff.valid = true;
  }

  spec.exit_on_cutoff = j.value("exit_on_cutoff", false);
  if (spec.exit_on_cutoff && !spec.cutoff.valid)
    fail(path, "exit_on_cutoff", "requires a cutoff line");
  spec.duration_s = j.value("duration_s", 300.0);
  if (!(spec.duration_s > 0.0)) fail(path, "duration_s", "must be positive");

  if (j.contains("config")) {
    if (!j["config"].is_object()) fail(path, "config", "expected an object");
    parse_config_block(j["config"], path, spec.config);
  }
  spec.config.validate();
  return spec;
}

RunConfig apply_config_file(const std::string& path, RunConfig base) {
  const json j = parse_file(path);
  if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");
  parse_config_block(j, path, base);
  base.validate();
  return base;
}

}  // namespace mcplan

#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "mcplan/sensing.hpp"
#include "mcplan/sim.hpp"

namespace mcplan {

// Scenario/config problems carry the offending file and field; the CLI maps
// this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimParams {
  int n_beams = 360;
  double max_range = 6.0;
  double omega = 1.5707963267948966;  // rotation rate, rad/s (quarter turn/s)
  double footprint_radius = 0.13;
};

struct RunConfig {
  SafetyConfig safety;
  NoiseModel noise;
  SimParams sim;

  void validate() const;  // throws ConfigError
};

// Oriented cutoff line; a pose is inside (in the cul-de-sac) when the sign
// of the cross product (p2-p1) x (p-p1) matches inside_sign. Points exactly
// on the line are outside.
struct CutoffLine {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  int inside_sign = -1;
  bool valid = false;

  double signed_offset(double px, double py) const;  // perpendicular meters
  bool inside(double px, double py) const;
};

struct ScenarioSpec {
  std::string name;
  WorldModel world;
  std::map<std::string, std::array<double, 3>> start_poses;  // x, y, theta
  CutoffLine cutoff;
  bool exit_on_cutoff = false;  // end the run after escaping past the cutoff
  double duration_s = 300.0;
  RunConfig config;
};

// JSON schema (all config blocks optional, defaults above):
// {
//   "name": str,
//   "segments": [[x1,y1,x2,y2], ...],
//   "start_poses": {"centre": [x,y,theta], ...},
//   "cutoff": {"line": [x1,y1,x2,y2], "inside": "negative"|"positive"},
//   "exit_on_cutoff": bool,
//   "duration_s": number,
//   "config": {"safety": {...}, "noise": {...}, "sim": {...}}
// }
ScenarioSpec load_scenario(const std::string& path);

// Standalone config file: the "config" object above at top level. Applies
// the fields present on top of `base` and validates.
RunConfig apply_config_file(const std::string& path, RunConfig base);

}  // namespace mcplan

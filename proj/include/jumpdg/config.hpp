#pragma once

#include <string>

#include "jumpdg/jump_filter.hpp"

namespace jumpdg {

/// One run's knobs: a problem id plus overrides of the spec defaults.
/// Sentinel values (negative ints, 0 mesh sizes, empty strings) mean "use
/// the problem's default".
struct RunConfig {
  std::string problem;
  double t_end = -1.0;
  int nx = 0, ny = 0;
  int k = -1;

  bool filter_enabled = true;
  FilterParams::Mode filter_mode = FilterParams::Mode::modewise;
  /// "" = per-equation default, else "scalar", "euler", "custom".
  std::string filter_policy;
  double c_custom_x = 0.0, c_custom_y = 0.0;
  FilterParams::DtMode filter_dt = FilterParams::DtMode::full;

  int pp = -1;      // -1 spec default, else 0/1
  int hybrid = -1;  // -1 spec default, else 0/1
  double hybrid_threshold = 0.1;

  double cfl = 0.0;  // 0 = spec default, else the global default
  double fixed_dt_c = 0.0;
  bool forward_euler = false;
  double tau_factor = 0.5;

  std::string out_dir;  // "" = output directory env var, then "out"
  std::string prefix;   // "" = problem id
  int frames = 0;       // intermediate field dumps; 0 = none
  bool averages = false;
  int error_var = -1;

  /// Internal switch used by the study driver and tests; not a config key.
  bool write_outputs = true;
};

/// Parses the sectioned key = value config format. Sections: [problem],
/// [mesh], [filter], [limiters], [time], [output]. Unknown sections or keys
/// are hard errors naming the offending line.
RunConfig parse_config_text(const std::string& text, const std::string& name);
RunConfig parse_config_file(const std::string& path);

}  // namespace jumpdg

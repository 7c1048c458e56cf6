#include "jumpdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "jumpdg/util.hpp"

namespace jumpdg {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& what) {
  std::ostringstream m;
  m << name << ":" << line << ": " << what;
  throw ConfigError(m.str());
}

bool parse_bool(const std::string& v, const std::string& name, int line) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  fail(name, line, "expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& name, int line) {
  size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail(name, line, "expected a number, got '" + v + "'");
  }
  if (pos != v.size()) fail(name, line, "trailing junk in number '" + v + "'");
  return d;
}

int parse_int(const std::string& v, const std::string& name, int line) {
  double d = parse_double(v, name, line);
  int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    fail(name, line, "expected an integer, got '" + v + "'");
  return i;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  int ln = 0;
  bool have_id = false;
  while (std::getline(in, raw)) {
    ++ln;
    std::string line = raw;
    size_t cmt = line.find_first_of("#;");
    if (cmt != std::string::npos) line = line.substr(0, cmt);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(name, ln, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "mesh" && section != "filter" &&
          section != "limiters" && section != "time" && section != "output")
        fail(name, ln, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail(name, ln, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail(name, ln, "empty key or value");
    if (section.empty()) fail(name, ln, "key '" + key + "' before any section");

    if (section == "problem") {
      if (key == "id") {
        cfg.problem = val;
        have_id = true;
      } else if (key == "t_end") {
        cfg.t_end = parse_double(val, name, ln);
      } else {
        fail(name, ln, "unknown key '" + key + "' in [problem]");
      }
    } else if (section == "mesh") {
      if (key == "nx")
        cfg.nx = parse_int(val, name, ln);
      else if (key == "ny")
        cfg.ny = parse_int(val, name, ln);
      else if (key == "k")
        cfg.k = parse_int(val, name, ln);
      else
        fail(name, ln, "unknown key '" + key + "' in [mesh]");
    } else if (section == "filter") {
      if (key == "enabled") {
        cfg.filter_enabled = parse_bool(val, name, ln);
      } else if (key == "mode") {
        if (val == "modewise")
          cfg.filter_mode = FilterParams::Mode::modewise;
        else if (val == "full")
          cfg.filter_mode = FilterParams::Mode::full;
        else
          fail(name, ln, "mode must be modewise or full");
      } else if (key == "policy") {
        if (val != "default" && val != "scalar" && val != "euler" &&
            val != "custom")
          fail(name, ln, "policy must be default, scalar, euler or custom");
        cfg.filter_policy = val == "default" ? "" : val;
      } else if (key == "c_custom_x") {
        cfg.c_custom_x = parse_double(val, name, ln);
      } else if (key == "c_custom_y") {
        cfg.c_custom_y = parse_double(val, name, ln);
      } else {
        fail(name, ln, "unknown key '" + key + "' in [filter]");
      }
    } else if (section == "limiters") {
      if (key == "pp")
        cfg.pp = parse_bool(val, name, ln) ? 1 : 0;
      else if (key == "hybrid")
        cfg.hybrid = parse_bool(val, name, ln) ? 1 : 0;
      else if (key == "hybrid_threshold")
        cfg.hybrid_threshold = parse_double(val, name, ln);
      else
        fail(name, ln, "unknown key '" + key + "' in [limiters]");
    } else if (section == "time") {
      if (key == "cfl") {
        cfg.cfl = parse_double(val, name, ln);
      } else if (key == "fixed_dt_c") {
        cfg.fixed_dt_c = parse_double(val, name, ln);
      } else if (key == "forward_euler") {
        cfg.forward_euler = parse_bool(val, name, ln);
      } else if (key == "tau_factor") {
        cfg.tau_factor = parse_double(val, name, ln);
      } else if (key == "filter_dt") {
        if (val == "full")
          cfg.filter_dt = FilterParams::DtMode::full;
        else if (val == "stage_weighted")
          cfg.filter_dt = FilterParams::DtMode::stage_weighted;
        else
          fail(name, ln, "filter_dt must be full or stage_weighted");
      } else {
        fail(name, ln, "unknown key '" + key + "' in [time]");
      }
    } else {  // output
      if (key == "dir")
        cfg.out_dir = val;
      else if (key == "prefix")
        cfg.prefix = val;
      else if (key == "frames")
        cfg.frames = parse_int(val, name, ln);
      else if (key == "averages")
        cfg.averages = parse_bool(val, name, ln);
      else if (key == "error_var")
        cfg.error_var = parse_int(val, name, ln);
      else
        fail(name, ln, "unknown key '" + key + "' in [output]");
    }
  }
  if (!have_id) throw ConfigError(name + ": missing [problem] id");
  if (cfg.nx < 0 || cfg.ny < 0)
    throw ConfigError(name + ": mesh sizes must be positive");
  if (cfg.k > 4) throw ConfigError(name + ": k must be in [0, 4]");
  if (cfg.frames < 0) throw ConfigError(name + ": frames must be >= 0");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace jumpdg

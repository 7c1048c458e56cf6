#include <iomanip>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "jumpdg/config.hpp"
#include "jumpdg/problems.hpp"
#include "jumpdg/runner.hpp"

namespace {

int do_run(const std::string& path, const std::string& out_dir, int frames,
           bool averages) {
  jumpdg::RunConfig cfg = jumpdg::parse_config_file(path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (frames >= 0) cfg.frames = frames;
  if (averages) cfg.averages = true;
  jumpdg::RunResult r = jumpdg::run(cfg);
  const jumpdg::RunSummary& s = r.summary;
  std::cout << s.problem << ": " << s.steps << " steps to t = " << s.t_end
            << " in " << std::fixed << std::setprecision(2) << s.wall_seconds
            << "s";
  if (s.l2_error >= 0.0)
    std::cout << ", L2 error " << std::scientific << std::setprecision(3)
              << s.l2_error;
  std::cout << "\n";
  return 0;
}

int do_list() {
  for (const jumpdg::ProblemSpec& s : jumpdg::registry()) {
    std::cout << std::left << std::setw(20) << s.id;
    if (s.two_dim())
      std::cout << std::setw(12)
                << (std::to_string(s.default_nx) + "x" +
                    std::to_string(s.default_ny));
    else
      std::cout << std::setw(12) << s.default_nx;
    std::cout << "k=" << s.default_k << "  T=" << std::setw(8) << s.t_end
              << " " << s.summary << "\n";
  }
  return 0;
}

int do_validate(const std::string& path) {
  jumpdg::RunConfig cfg = jumpdg::parse_config_file(path);
  const jumpdg::ProblemSpec& spec = jumpdg::lookup(cfg.problem);
  int k = cfg.k >= 0 ? cfg.k : spec.default_k;
  if (k > 4) throw jumpdg::ConfigError("k must be in [0, 4]");
  int nx = cfg.nx > 0 ? cfg.nx : spec.default_nx;
  int ny = spec.two_dim() ? (cfg.ny > 0 ? cfg.ny : spec.default_ny) : 0;
  std::cout << "OK: " << spec.id << ", mesh " << nx;
  if (ny > 0) std::cout << "x" << ny;
  std::cout << ", k = " << k
            << ", T = " << (cfg.t_end >= 0 ? cfg.t_end : spec.t_end)
            << ", filter " << (cfg.filter_enabled ? "on" : "off") << ", pp "
            << ((cfg.pp >= 0 ? cfg.pp != 0 : spec.default_pp) ? "on" : "off")
            << ", hybrid "
            << ((cfg.hybrid >= 0 ? cfg.hybrid != 0 : spec.default_hybrid)
                    ? "on"
                    : "off")
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modal DG solver for hyperbolic conservation laws with "
               "interface-jump filtering"};
  app.require_subcommand(1);

  std::string run_cfg, run_out;
  int run_frames = -1;
  bool run_avg = false;
  CLI::App* cmd_run = app.add_subcommand("run", "execute a config file");
  cmd_run->add_option("config", run_cfg, "config file path")->required();
  cmd_run->add_option("--out", run_out, "output directory override");
  cmd_run->add_option("--frames", run_frames, "frame count override");
  cmd_run->add_flag("--averages", run_avg, "write final cell averages");

  std::string study_problem, study_csv;
  int study_k = 2;
  std::vector<int> study_meshes;
  bool study_nofilter = false;
  CLI::App* cmd_study = app.add_subcommand(
      "study", "error/order table against the analytic reference");
  cmd_study->add_option("problem", study_problem, "registry problem id")
      ->required();
  cmd_study->add_option("--k", study_k, "polynomial degree");
  cmd_study->add_option("--meshes", study_meshes, "mesh sizes, e.g. 20,40,80")
      ->required()
      ->delimiter(',');
  cmd_study->add_flag("--no-filter", study_nofilter, "disable the filter");
  cmd_study->add_option("--csv", study_csv, "also write rows as CSV");

  CLI::App* cmd_list =
      app.add_subcommand("list", "print the benchmark registry");

  std::string val_cfg;
  CLI::App* cmd_val =
      app.add_subcommand("validate", "check a config without running it");
  cmd_val->add_option("config", val_cfg, "config file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed())
      return do_run(run_cfg, run_out, run_frames, run_avg);
    if (cmd_study->parsed()) {
      jumpdg::convergence_study(study_problem, study_k, study_meshes,
                                !study_nofilter, &std::cout, study_csv);
      return 0;
    }
    if (cmd_list->parsed()) return do_list();
    if (cmd_val->parsed()) return do_validate(val_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

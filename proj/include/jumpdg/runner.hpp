#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "jumpdg/config.hpp"
#include "jumpdg/dg_operator.hpp"
#include "jumpdg/problems.hpp"

namespace jumpdg {

/// Machine-readable outcome of one run; also serialized as JSON next to the
/// output frames.
struct RunSummary {
  std::string problem;
  int nx = 0, ny = 0, k = 0;
  double t_end = 0.0;
  int steps = 0;
  double wall_seconds = 0.0;
  double l2_error = -1.0, linf_error = -1.0;  // -1 = no analytic reference
  int error_var = 0;
  double mass_drift_rel = 0.0;
  /// Minimum density/pressure seen at limiter test points. Tracked every
  /// stage when the positivity limiter runs, else sampled at frame times
  /// and at the end. +inf for scalar equations.
  double min_density = 0.0, min_pressure = 0.0;
  long pp_density_cells = 0, pp_pressure_cells = 0;
  bool completed = false;
  std::string error;
};

/// A finished (or aborted) run with the final field and the operator that
/// owns its discretization, for in-process consumers like the test suites.
struct RunResult {
  RunSummary summary;
  ModalField u;
  std::shared_ptr<DGOperator1D> op1;
  std::shared_ptr<DGOperator2D> op2;
  std::vector<double> sigma;           // last per-cell damping diagnostic
  std::vector<std::uint8_t> troubled;  // last hybrid flags (empty if unused)
};

/// Executes one configured run end to end: projection, time loop with the
/// configured limiter stack, optional frame/averages output and a JSON
/// summary. Admissibility failures flush the most recent snapshot and
/// rethrow.
RunResult run(const RunConfig& cfg);

struct StudyRow {
  int n = 0;
  double l2 = 0.0, linf = 0.0;
  double order_l2 = 0.0, order_linf = 0.0;  // 0 on the coarsest row
};

/// Error/order table against the problem's analytic reference. Rows go to
/// `txt` as an aligned table (if given) and to csv_path (if non-empty).
/// Non-monotone error growth is flagged in the text output, not fatal.
std::vector<StudyRow> convergence_study(const std::string& problem, int k,
                                        const std::vector<int>& meshes,
                                        bool filter_on, std::ostream* txt,
                                        const std::string& csv_path);

/// Cell-average table: x (and y in 2D) followed by the conserved variables.
struct AverageTable {
  int n_vars = 0;
  bool two_dim = false;
  std::vector<double> x, y;
  std::vector<State> avg;
};

void write_averages(const std::string& path, const DGOperator1D& op,
                    const ModalField& u);
void write_averages(const std::string& path, const DGOperator2D& op,
                    const ModalField& u);
AverageTable load_averages(const std::string& path);

/// Bundled reference data directory: the data dir env override when set,
/// else the data/ directory the build was configured with.
std::string data_dir();

}  // namespace jumpdg

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "jumpdg/equations.hpp"
#include "jumpdg/mesh.hpp"

namespace jumpdg {

/// Self-contained benchmark description. Running a spec with its defaults
/// reproduces one of the bundled figure/table configurations, so every knob
/// a run needs (equation, domain, masked boxes, boundary tags, end time,
/// mesh, limiter stack) lives here.
struct ProblemSpec {
  std::string id;
  std::string summary;
  Equation eq;

  double x0 = 0.0, x1 = 1.0;  // domain; y bounds ignored in 1D
  double y0 = 0.0, y1 = 1.0;
  double t_end = 1.0;

  int default_nx = 0;
  int default_ny = 0;  // 0 in 1D
  int default_k = 2;
  bool default_pp = false;      // positivity limiter in the default stack
  bool default_hybrid = false;  // hybrid limiter instead of plain filter
  double default_cfl = 0.0;     // 0 = use the global CFL default

  /// Initial condition in conserved variables; y is passed as 0 in 1D.
  std::function<void(double x, double y, double* state)> initial;

  /// Boundary tags, {left, right} in 1D and {west, east, south, north}.
  std::array<BoundaryTag, 4> bc;

  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> masked;  // rectangles removed from the domain

  /// Analytic reference, when one exists, valid for t < exact_until.
  std::function<void(double x, double y, double t, double* state)> exact;
  double exact_until = 0.0;  // 0 = no analytic reference

  /// Bundled fine-mesh cell-average reference file (relative to the data
  /// directory), or empty.
  std::string reference_file;

  int error_var = 0;   // variable used for error norms
  bool closed = false;  // no in/outflow: conservation holds to round-off

  bool two_dim() const { return default_ny > 0; }
};

/// The immutable benchmark registry.
const std::vector<ProblemSpec>& registry();

/// Spec by id. Unknown ids raise ConfigError listing every valid id.
const ProblemSpec& lookup(const std::string& id);

/// State behind a shock of Mach number `mach` running into gas at rest with
/// density rho1 and pressure p1. Outputs density, speed (along the
/// propagation direction) and pressure of the post-shock state.
void moving_shock_state(double mach, double rho1, double p1, double gamma,
                        double* rho2, double* u2, double* p2);

/// Downstream state of a stationary normal shock with supersonic upstream
/// (rho1, u1, p1).
void stationary_shock_state(double rho1, double u1, double p1, double gamma,
                            double* rho2, double* u2, double* p2);

/// Smooth-regime solution of Burgers with data 1/2 + sin(x): solves the
/// characteristic equation u = 1/2 + sin(x - u t) by Newton iteration to
/// 1e-14. Throws once characteristics cross (t >= 1) or the iteration
/// stalls; use a fine-mesh numerical reference in that regime.
double burgers_exact(double x, double t);

}  // namespace jumpdg

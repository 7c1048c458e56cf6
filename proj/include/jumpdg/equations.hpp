#pragma once

#include <array>
#include <string>

#include "jumpdg/util.hpp"

namespace jumpdg {

enum class PDE { advection, burgers, euler };

/// A small fixed-size conserved state; entries beyond n_vars are unused.
using State = std::array<double, 4>;

/// Conservation law descriptor with flux, wave speeds and derived
/// quantities. One concrete type covers scalar advection, Burgers and the
/// compressible Euler equations in one and two space dimensions; Euler
/// states are ordered (rho, mx[, my], E).
struct Equation {
  PDE pde = PDE::euler;
  int dim = 1;
  int n_vars = 3;
  double gamma = 1.4;
  double ax = 1.0, ay = 0.0;  // advection velocity

  static Equation advection1d(double a = 1.0);
  static Equation advection2d(double ax, double ay);
  static Equation burgers();
  static Equation euler1d(double gamma = 1.4);
  static Equation euler2d(double gamma = 1.4);

  bool is_euler() const { return pde == PDE::euler; }

  double pressure(const double* s) const;
  double sound_speed(const double* s) const;
  /// Specific total enthalpy H = (E + p) / rho.
  double enthalpy(const double* s) const;
  /// Strictly positive density and pressure (scalar laws: always true).
  bool admissible(const double* s) const;

  /// Spectral radius of the directional flux Jacobian (dir: 0 = x, 1 = y).
  /// Throws AdmissibilityError for non-positive density or pressure.
  double max_wave_speed(const double* s, int dir, int cell = -1) const;

  /// Physical flux component in direction dir.
  void flux(const double* s, int dir, double* out, int cell = -1) const;

  /// Local Lax-Friedrichs flux through an axis-aligned face oriented along
  /// +x (dir = 0) or +y (dir = 1); sl is the state on the minus side.
  void llf(const double* sl, const double* sr, int dir, double* out,
           int cell = -1) const;

  /// LLF flux with a caller-supplied dissipation coefficient. The operators
  /// pass cell-average wave speeds here: a positivity-floored trace point
  /// (near-vacuum density under finite pressure) has an enormous sound
  /// speed, and using it as alpha turns the face flux into a bomb.
  void llf_alpha(const double* sl, const double* sr, int dir, double alpha,
                 double* out, int cell = -1) const;

  /// General-normal form used by tests: n = (nx, ny) need not be axis
  /// aligned; the flux is F(s) . n with the usual LLF dissipation.
  void llf_normal(const double* sl, const double* sr, double nx, double ny,
                  double* out) const;
};

/// Conserved Euler state from primitive (rho, u, p).
State euler_state_1d(double rho, double u, double p, double gamma = 1.4);
/// Conserved Euler state from primitive (rho, u, v, p).
State euler_state_2d(double rho, double u, double v, double p,
                     double gamma = 1.4);

}  // namespace jumpdg

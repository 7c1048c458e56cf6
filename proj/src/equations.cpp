#include "jumpdg/equations.hpp"

#include <algorithm>
#include <cmath>

namespace jumpdg {

Equation Equation::advection1d(double a) {
  Equation e;
  e.pde = PDE::advection;
  e.dim = 1;
  e.n_vars = 1;
  e.ax = a;
  return e;
}

Equation Equation::advection2d(double ax, double ay) {
  Equation e;
  e.pde = PDE::advection;
  e.dim = 2;
  e.n_vars = 1;
  e.ax = ax;
  e.ay = ay;
  return e;
}

Equation Equation::burgers() {
  Equation e;
  e.pde = PDE::burgers;
  e.dim = 1;
  e.n_vars = 1;
  return e;
}

Equation Equation::euler1d(double gamma) {
  Equation e;
  e.pde = PDE::euler;
  e.dim = 1;
  e.n_vars = 3;
  e.gamma = gamma;
  return e;
}

Equation Equation::euler2d(double gamma) {
  Equation e;
  e.pde = PDE::euler;
  e.dim = 2;
  e.n_vars = 4;
  e.gamma = gamma;
  return e;
}

double Equation::pressure(const double* s) const {
  if (pde != PDE::euler) return 0.0;
  double rho = s[0];
  double ke = s[1] * s[1];
  if (dim == 2) ke += s[2] * s[2];
  double E = s[n_vars - 1];
  return (gamma - 1.0) * (E - 0.5 * ke / rho);
}

double Equation::sound_speed(const double* s) const {
  return std::sqrt(gamma * pressure(s) / s[0]);
}

double Equation::enthalpy(const double* s) const {
  return (s[n_vars - 1] + pressure(s)) / s[0];
}

bool Equation::admissible(const double* s) const {
  if (pde != PDE::euler) return true;
  return s[0] > 0.0 && pressure(s) > 0.0;
}

namespace {
[[noreturn]] void bad_state(const double* s, int nv, int cell) {
  std::string msg = "inadmissible state (";
  for (int v = 0; v < nv; ++v)
    msg += std::to_string(s[v]) + (v + 1 < nv ? ", " : ")");
  if (cell >= 0) msg += " in cell " + std::to_string(cell);
  throw AdmissibilityError(msg, cell);
}
}  // namespace

double Equation::max_wave_speed(const double* s, int dir, int cell) const {
  switch (pde) {
    case PDE::advection:
      return std::abs(dir == 0 ? ax : ay);
    case PDE::burgers:
      return std::abs(s[0]);
    case PDE::euler: {
      double rho = s[0];
      double p = pressure(s);
      if (!(rho > 0.0) || !(p > 0.0)) bad_state(s, n_vars, cell);
      double u = s[1 + dir] / rho;
      return std::abs(u) + std::sqrt(gamma * p / rho);
    }
  }
  return 0.0;
}

void Equation::flux(const double* s, int dir, double* out, int cell) const {
  switch (pde) {
    case PDE::advection:
      out[0] = (dir == 0 ? ax : ay) * s[0];
      return;
    case PDE::burgers:
      out[0] = 0.5 * s[0] * s[0];
      return;
    case PDE::euler: {
      double rho = s[0];
      double p = pressure(s);
      if (!(rho > 0.0) || !(p > 0.0)) bad_state(s, n_vars, cell);
      double E = s[n_vars - 1];
      if (dim == 1) {
        double u = s[1] / rho;
        out[0] = s[1];
        out[1] = s[1] * u + p;
        out[2] = (E + p) * u;
      } else {
        double mn = s[1 + dir];
        double un = mn / rho;
        out[0] = mn;
        out[1] = s[1] * un;
        out[2] = s[2] * un;
        out[1 + dir] += p;
        out[3] = (E + p) * un;
      }
      return;
    }
  }
}

void Equation::llf(const double* sl, const double* sr, int dir, double* out,
                   int cell) const {
  double alpha =
      std::max(max_wave_speed(sl, dir, cell), max_wave_speed(sr, dir, cell));
  llf_alpha(sl, sr, dir, alpha, out, cell);
}

void Equation::llf_alpha(const double* sl, const double* sr, int dir,
                         double alpha, double* out, int cell) const {
  double fl[4], fr[4];
  flux(sl, dir, fl, cell);
  flux(sr, dir, fr, cell);
  for (int v = 0; v < n_vars; ++v)
    out[v] = 0.5 * (fl[v] + fr[v]) - 0.5 * alpha * (sr[v] - sl[v]);
}

void Equation::llf_normal(const double* sl, const double* sr, double nx,
                          double ny, double* out) const {
  double fxl[4], fxr[4], fyl[4] = {0}, fyr[4] = {0};
  flux(sl, 0, fxl);
  flux(sr, 0, fxr);
  if (dim == 2) {
    flux(sl, 1, fyl);
    flux(sr, 1, fyr);
  }
  auto speed = [&](const double* s) {
    if (pde == PDE::advection) return std::abs(ax * nx + ay * ny);
    if (pde == PDE::burgers) return std::abs(s[0] * nx);
    double rho = s[0];
    double un = (s[1] * nx + (dim == 2 ? s[2] * ny : 0.0)) / rho;
    return std::abs(un) + sound_speed(s);
  };
  double alpha = std::max(speed(sl), speed(sr));
  for (int v = 0; v < n_vars; ++v)
    out[v] = 0.5 * ((fxl[v] + fxr[v]) * nx + (fyl[v] + fyr[v]) * ny) -
             0.5 * alpha * (sr[v] - sl[v]);
}

State euler_state_1d(double rho, double u, double p, double gamma) {
  return {rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u, 0.0};
}

State euler_state_2d(double rho, double u, double v, double p, double gamma) {
  return {rho, rho * u, rho * v,
          p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
}

}  // namespace jumpdg

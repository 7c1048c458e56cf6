#include "jumpdg/problems.hpp"

#include <cmath>
#include <sstream>

#include "jumpdg/util.hpp"

namespace jumpdg {

void moving_shock_state(double mach, double rho1, double p1, double gamma,
                        double* rho2, double* u2, double* p2) {
  double m2 = mach * mach;
  double c1 = std::sqrt(gamma * p1 / rho1);
  *rho2 = rho1 * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
  *p2 = p1 * (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
  *u2 = mach * c1 * (1.0 - rho1 / *rho2);
}

void stationary_shock_state(double rho1, double u1, double p1, double gamma,
                            double* rho2, double* u2, double* p2) {
  double m2 = u1 * u1 * rho1 / (gamma * p1);
  *rho2 = rho1 * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
  *p2 = p1 * (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
  *u2 = u1 * rho1 / *rho2;  // mass flux continuity
}

double burgers_exact(double x, double t) {
  if (t >= 1.0)
    throw std::runtime_error(
        "burgers_exact: characteristics cross at t = 1; "
        "use a fine-mesh numerical reference for later times");
  double u = 0.5 + std::sin(x);
  for (int it = 0; it < 100; ++it) {
    double f = u - 0.5 - std::sin(x - u * t);
    double fp = 1.0 + t * std::cos(x - u * t);
    double du = f / fp;
    u -= du;
    if (std::abs(du) < 1e-14) return u;
  }
  throw std::runtime_error(
      "burgers_exact: Newton iteration stalled; "
      "use a fine-mesh numerical reference instead");
}

namespace {

constexpr double kPi = 3.14159265358979323846;

void copy_state(const State& s, double* out, int n) {
  for (int v = 0; v < n; ++v) out[v] = s[v];
}

/// Ghost state for a solid wall expressed through a value-only boundary
/// function: interior state with the wall-normal momentum mirrored.
void mirror_state(const double* in, const double* nrm, double* g) {
  double mn = in[1] * nrm[0] + in[2] * nrm[1];
  g[0] = in[0];
  g[1] = in[1] - 2.0 * mn * nrm[0];
  g[2] = in[2] - 2.0 * mn * nrm[1];
  g[3] = in[3];
}

/// Isentropic vortex perturbation superposed on a uniform base flow: the
/// velocity and temperature deltas keep the entropy p/rho^gamma constant.
/// eps is the strength, rc the critical radius, alpha the decay rate.
State vortex_state(double x, double y, double xc, double yc, double eps,
                   double rc, double alpha, double rho0, double u0, double v0,
                   double p0, double gamma) {
  double xb = x - xc, yb = y - yc;
  double tau = std::sqrt(xb * xb + yb * yb) / rc;
  double e1 = std::exp(alpha * (1.0 - tau * tau));
  double du = eps / rc * e1 * yb;
  double dv = -eps / rc * e1 * xb;
  double dT = -(gamma - 1.0) * eps * eps / (4.0 * alpha * gamma) * e1 * e1;
  double T = p0 / rho0 + dT;
  double s = p0 / std::pow(rho0, gamma);  // invariant entropy function
  double rho = std::pow(T / s, 1.0 / (gamma - 1.0));
  return euler_state_2d(rho, u0 + du, v0 + dv, rho * T, gamma);
}

double wrap(double a, double len) { return a - len * std::round(a / len); }

ProblemSpec make_advection_smooth() {
  ProblemSpec s;
  s.id = "advection_smooth";
  s.summary = "1D linear transport of sin(x), exact solution available";
  s.eq = Equation::advection1d(1.0);
  s.x0 = 0.0;
  s.x1 = 2.0 * kPi;
  s.t_end = 1.0;
  s.default_nx = 80;
  s.default_k = 2;
  s.initial = [](double x, double, double* u) { u[0] = std::sin(x); };
  s.bc = {BoundaryTag::periodic(), BoundaryTag::periodic(), {}, {}};
  s.exact = [](double x, double, double t, double* u) {
    u[0] = std::sin(x - t);
  };
  s.exact_until = 1e30;
  s.closed = true;
  return s;
}

ProblemSpec make_burgers_smooth() {
  ProblemSpec s;
  s.id = "burgers_smooth";
  s.summary = "Burgers with u0 = 1/2 + sin(x); smooth until t = 1";
  s.eq = Equation::burgers();
  s.x0 = -kPi;
  s.x1 = kPi;
  s.t_end = 0.5;
  s.default_nx = 80;
  s.default_k = 2;
  s.initial = [](double x, double, double* u) { u[0] = 0.5 + std::sin(x); };
  s.bc = {BoundaryTag::periodic(), BoundaryTag::periodic(), {}, {}};
  s.exact = [](double x, double, double t, double* u) {
    u[0] = burgers_exact(x, t);
  };
  s.exact_until = 1.0;
  s.closed = true;
  return s;
}

ProblemSpec make_lax() {
  ProblemSpec s;
  s.id = "lax";
  s.summary = "Lax shock tube, Riemann data (0.445,0.698,3.528)/(0.5,0,0.571)";
  s.eq = Equation::euler1d();
  s.x0 = -1.0;
  s.x1 = 1.0;
  s.t_end = 0.13;
  s.default_nx = 200;
  s.default_k = 2;
  State l = euler_state_1d(0.445, 0.698, 3.528);
  State r = euler_state_1d(0.5, 0.0, 0.571);
  s.initial = [l, r](double x, double, double* u) {
    copy_state(x < 0.0 ? l : r, u, 3);
  };
  s.bc = {BoundaryTag::outflow(), BoundaryTag::outflow(), {}, {}};
  return s;
}

ProblemSpec make_blast_waves() {
  ProblemSpec s;
  s.id = "blast_waves";
  s.summary = "two interacting blast waves, p = 1e3 / 1e-2 / 1e2";
  s.eq = Equation::euler1d();
  s.x0 = 0.0;
  s.x1 = 1.0;
  s.t_end = 0.038;
  s.default_nx = 600;
  s.default_k = 2;
  State a = euler_state_1d(1.0, 0.0, 1e3);
  State b = euler_state_1d(1.0, 0.0, 1e-2);
  State c = euler_state_1d(1.0, 0.0, 1e2);
  s.initial = [a, b, c](double x, double, double* u) {
    copy_state(x < 0.1 ? a : (x > 0.9 ? c : b), u, 3);
  };
  s.bc = {BoundaryTag::reflective(), BoundaryTag::reflective(), {}, {}};
  s.reference_file = "blast_waves_ref.txt";
  s.closed = true;
  return s;
}

ProblemSpec make_shu_osher() {
  ProblemSpec s;
  s.id = "shu_osher";
  s.summary = "Mach 3 shock hitting a sinusoidal density field";
  s.eq = Equation::euler1d();
  s.x0 = -5.0;
  s.x1 = 5.0;
  s.t_end = 1.8;
  s.default_nx = 400;
  s.default_k = 2;
  State l = euler_state_1d(3.857143, 2.629369, 10.333333);
  s.initial = [l](double x, double, double* u) {
    if (x < -4.0) {
      copy_state(l, u, 3);
    } else {
      copy_state(euler_state_1d(1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0), u,
                 3);
    }
  };
  s.bc = {BoundaryTag::inflow(l), BoundaryTag::outflow(), {}, {}};
  s.reference_file = "shu_osher_ref.txt";
  return s;
}

ProblemSpec make_isentropic_vortex() {
  ProblemSpec s;
  s.id = "isentropic_vortex";
  s.summary = "vortex advected across a periodic box, exact at all times";
  s.eq = Equation::euler2d();
  s.x0 = 0.0;
  s.x1 = 10.0;
  s.y0 = 0.0;
  s.y1 = 10.0;
  s.t_end = 10.0;
  s.default_nx = 80;
  s.default_ny = 80;
  s.default_k = 1;
  double eps = 5.0 / (2.0 * kPi), rc = 1.0, alpha = 0.5;
  double g = s.eq.gamma;
  s.initial = [eps, rc, alpha, g](double x, double y, double* u) {
    State st = vortex_state(x, y, 5.0, 5.0, eps, rc, alpha, 1, 1, 1, 1, g);
    copy_state(st, u, 4);
  };
  // The vortex rides the (1,1) mean flow around the torus.
  s.exact = [eps, rc, alpha, g](double x, double y, double t, double* u) {
    double xb = wrap(x - t - 5.0, 10.0), yb = wrap(y - t - 5.0, 10.0);
    State st =
        vortex_state(xb, yb, 0.0, 0.0, eps, rc, alpha, 1, 1, 1, 1, g);
    copy_state(st, u, 4);
  };
  s.exact_until = 1e30;
  s.bc = {BoundaryTag::periodic(), BoundaryTag::periodic(),
          BoundaryTag::periodic(), BoundaryTag::periodic()};
  s.closed = true;
  return s;
}

ProblemSpec make_shock_vortex() {
  ProblemSpec s;
  s.id = "shock_vortex";
  s.summary = "weak vortex advected through a stationary Mach 1.1 shock";
  s.eq = Equation::euler2d();
  s.x0 = 0.0;
  s.x1 = 2.0;
  s.y0 = 0.0;
  s.y1 = 1.0;
  s.t_end = 0.8;
  s.default_nx = 400;
  s.default_ny = 200;
  s.default_k = 3;
  double g = s.eq.gamma;
  double ul = 1.1 * std::sqrt(g);
  double rho_r, u_r, p_r;
  stationary_shock_state(1.0, ul, 1.0, g, &rho_r, &u_r, &p_r);
  State right = euler_state_2d(rho_r, u_r, 0.0, p_r, g);
  State left = euler_state_2d(1.0, ul, 0.0, 1.0, g);
  s.initial = [g, ul, right](double x, double y, double* u) {
    if (x >= 0.5) {
      copy_state(right, u, 4);
    } else {
      State st =
          vortex_state(x, y, 0.25, 0.5, 0.3, 0.05, 0.204, 1.0, ul, 0.0, 1.0, g);
      copy_state(st, u, 4);
    }
  };
  s.bc = {BoundaryTag::inflow(left), BoundaryTag::outflow(),
          BoundaryTag::reflective(), BoundaryTag::reflective()};
  return s;
}

ProblemSpec make_double_mach() {
  ProblemSpec s;
  s.id = "double_mach";
  s.summary = "Mach 10 shock reflecting off a 60-degree ramp";
  s.eq = Equation::euler2d();
  s.x0 = 0.0;
  s.x1 = 4.0;
  s.y0 = 0.0;
  s.y1 = 1.0;
  s.t_end = 0.2;
  s.default_nx = 960;
  s.default_ny = 240;
  s.default_k = 3;
  double g = s.eq.gamma;
  double rho2, un, p2;
  moving_shock_state(10.0, 1.4, 1.0, g, &rho2, &un, &p2);
  // Shock normal points 30 degrees below the x axis in the wall frame.
  State post =
      euler_state_2d(rho2, un * std::sqrt(3.0) / 2.0, -un * 0.5, p2, g);
  State pre = euler_state_2d(1.4, 0.0, 0.0, 1.0, g);
  const double x_foot = 1.0 / 6.0, rt3 = std::sqrt(3.0);
  s.initial = [post, pre, x_foot, rt3](double x, double y, double* u) {
    copy_state(x < x_foot + y / rt3 ? post : pre, u, 4);
  };
  // Bottom: post-shock state ahead of the ramp foot, solid wall after it.
  BoundaryTag south = BoundaryTag::dirichlet(
      [post, x_foot](double x, double, double, const double* in,
                     const double* nrm, double* gst) {
        if (x < x_foot) {
          copy_state(post, gst, 4);
        } else {
          mirror_state(in, nrm, gst);
        }
      });
  // Top: the unperturbed shock front crossing y = 1 at speed 20/sqrt(3).
  BoundaryTag north = BoundaryTag::dirichlet(
      [post, pre, x_foot, rt3](double x, double, double t, const double*,
                               const double*, double* gst) {
        double xs = x_foot + (1.0 + 20.0 * t) / rt3;
        copy_state(x < xs ? post : pre, gst, 4);
      });
  s.bc = {BoundaryTag::inflow(post), BoundaryTag::outflow(), south, north};
  return s;
}

ProblemSpec make_forward_step() {
  ProblemSpec s;
  s.id = "forward_step";
  s.summary = "Mach 3 wind tunnel with a step";
  s.eq = Equation::euler2d();
  s.x0 = 0.0;
  s.x1 = 3.0;
  s.y0 = 0.0;
  s.y1 = 1.0;
  s.t_end = 4.0;
  s.default_nx = 480;
  s.default_ny = 160;
  s.default_k = 3;
  double g = s.eq.gamma;
  State inflow = euler_state_2d(g, 3.0, 0.0, 1.0, g);
  s.initial = [inflow](double, double, double* u) { copy_state(inflow, u, 4); };
  s.bc = {BoundaryTag::inflow(inflow), BoundaryTag::outflow(),
          BoundaryTag::reflective(), BoundaryTag::reflective()};
  s.masked.push_back({0.6, 3.0, 0.0, 0.2});
  return s;
}

ProblemSpec make_shock_diffraction() {
  ProblemSpec s;
  s.id = "shock_diffraction";
  s.summary = "Mach 5.09 shock diffracting around a backward-facing corner";
  s.eq = Equation::euler2d();
  s.x0 = 0.0;
  s.x1 = 13.0;
  s.y0 = 0.0;
  s.y1 = 11.0;
  s.t_end = 2.3;
  s.default_nx = 260;
  s.default_ny = 220;
  s.default_k = 3;
  s.default_pp = true;
  double g = s.eq.gamma;
  double rho2, u2, p2;
  moving_shock_state(5.09, 1.4, 1.0, g, &rho2, &u2, &p2);
  State post = euler_state_2d(rho2, u2, 0.0, p2, g);
  State pre = euler_state_2d(1.4, 0.0, 0.0, 1.0, g);
  s.initial = [post, pre](double x, double, double* u) {
    copy_state(x < 0.5 ? post : pre, u, 4);
  };
  s.bc = {BoundaryTag::inflow(post), BoundaryTag::outflow(),
          BoundaryTag::outflow(), BoundaryTag::outflow()};
  s.masked.push_back({0.0, 1.0, 0.0, 6.0});  // its faces act as solid walls
  return s;
}

ProblemSpec make_astro_jet() {
  ProblemSpec s;
  s.id = "astro_jet";
  s.summary = "Mach 2000 jet entering quiescent gas, gamma = 5/3";
  s.eq = Equation::euler2d(5.0 / 3.0);
  s.x0 = 0.0;
  s.x1 = 1.0;
  s.y0 = -0.25;
  s.y1 = 0.25;
  s.t_end = 0.001;
  s.default_nx = 320;
  s.default_ny = 160;
  s.default_k = 3;
  s.default_pp = true;
  s.default_cfl = 0.1;
  double g = s.eq.gamma;
  State ambient = euler_state_2d(0.5, 0.0, 0.0, 0.4127, g);
  State jet = euler_state_2d(5.0, 800.0, 0.0, 0.4127, g);
  State wall = euler_state_2d(5.0, 0.0, 0.0, 0.4127, g);
  s.initial = [ambient](double, double, double* u) {
    copy_state(ambient, u, 4);
  };
  BoundaryTag west = BoundaryTag::dirichlet(
      [jet, wall](double, double y, double, const double*, const double*,
                  double* gst) {
        copy_state(std::abs(y) <= 0.05 ? jet : wall, gst, 4);
      });
  s.bc = {west, BoundaryTag::outflow(), BoundaryTag::outflow(),
          BoundaryTag::outflow()};
  return s;
}

ProblemSpec make_shock_bubble() {
  ProblemSpec s;
  s.id = "shock_bubble";
  s.summary = "strong shock compressing a low-density bubble";
  s.eq = Equation::euler2d();
  s.x0 = -0.1;
  s.x1 = 1.6;
  s.y0 = -0.5;
  s.y1 = 0.5;
  s.t_end = 0.4;
  s.default_nx = 680;
  s.default_ny = 400;
  s.default_k = 3;
  s.default_pp = true;
  double g = s.eq.gamma;
  State a = euler_state_2d(11.0 / 3.0, 2.7136021011998722, 0.0, 10.0, g);
  State b = euler_state_2d(0.1, 0.0, 0.0, 1.0, g);
  State c = euler_state_2d(1.0, 0.0, 0.0, 1.0, g);
  s.initial = [a, b, c](double x, double y, double* u) {
    double dx = x - 0.3;
    if (x < 0.0) {
      copy_state(a, u, 4);
    } else if (dx * dx + y * y < 0.2 * 0.2) {
      copy_state(b, u, 4);
    } else {
      copy_state(c, u, 4);
    }
  };
  s.bc = {BoundaryTag::inflow(a), BoundaryTag::outflow(),
          BoundaryTag::reflective(), BoundaryTag::reflective()};
  return s;
}

ProblemSpec make_kelvin_helmholtz() {
  ProblemSpec s;
  s.id = "kelvin_helmholtz";
  s.summary = "shear instability seeded by a sinusoidal transverse velocity";
  s.eq = Equation::euler2d();
  s.x0 = -0.5;
  s.x1 = 0.5;
  s.y0 = -0.5;
  s.y1 = 0.5;
  s.t_end = 4.0;
  s.default_nx = 240;
  s.default_ny = 240;
  s.default_k = 3;
  double g = s.eq.gamma;
  const double L = 0.00625;
  s.initial = [g, L](double x, double y, double* u) {
    double rho, ux;
    if (y < -0.25) {
      rho = 1.0;
      ux = -0.5 + 0.5 * std::exp((y + 0.25) / L);
    } else if (y < 0.0) {
      rho = 2.0;
      ux = 0.5 - 0.5 * std::exp((-y - 0.25) / L);
    } else if (y < 0.25) {
      rho = 2.0;
      ux = 0.5 - 0.5 * std::exp((y - 0.25) / L);
    } else {
      rho = 1.0;
      ux = -0.5 + 0.5 * std::exp((0.25 - y) / L);
    }
    double v = 0.01 * std::sin(4.0 * kPi * x);
    copy_state(euler_state_2d(rho, ux, v, 1.5, g), u, 4);
  };
  s.bc = {BoundaryTag::periodic(), BoundaryTag::periodic(),
          BoundaryTag::periodic(), BoundaryTag::periodic()};
  s.closed = true;
  return s;
}

std::vector<ProblemSpec> build_registry() {
  std::vector<ProblemSpec> r;
  r.push_back(make_advection_smooth());
  r.push_back(make_burgers_smooth());
  r.push_back(make_lax());
  r.push_back(make_blast_waves());
  r.push_back(make_shu_osher());
  r.push_back(make_isentropic_vortex());
  r.push_back(make_shock_vortex());
  r.push_back(make_double_mach());
  r.push_back(make_forward_step());
  r.push_back(make_shock_diffraction());
  r.push_back(make_astro_jet());
  r.push_back(make_shock_bubble());
  r.push_back(make_kelvin_helmholtz());
  return r;
}

}  // namespace

const std::vector<ProblemSpec>& registry() {
  static const std::vector<ProblemSpec> r = build_registry();
  return r;
}

const ProblemSpec& lookup(const std::string& id) {
  for (const ProblemSpec& s : registry()) {
    if (s.id == id) return s;
  }
  std::ostringstream msg;
  msg << "unknown problem '" << id << "'; valid ids:";
  for (const ProblemSpec& s : registry()) msg << " " << s.id;
  throw ConfigError(msg.str());
}

}  // namespace jumpdg

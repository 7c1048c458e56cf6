#include "jumpdg/jump_filter.hpp"

#include <cmath>
#include <cstring>

namespace jumpdg {

FilterParams::Policy default_policy(const Equation& eq) {
  if (eq.pde != PDE::euler) return FilterParams::Policy::scalar_default;
  return eq.dim == 1 ? FilterParams::Policy::euler_1d
                     : FilterParams::Policy::euler_2d;
}

namespace {

constexpr int KP = kMaxDegree + 1;
constexpr int NV = kMaxVars;
// Composite trapezoid weights of the jump samples at -1, 0, 1, normalized by
// the reference edge length, so a constant |jump| integrates to itself.
constexpr double kTrap[3] = {0.25, 0.5, 0.25};

/// Mirrors a derivative trace across a face: momentum along the normal
/// flips, and each across-face derivative order adds another sign flip.
void reflect_derivs(const double* d, int order_across, const double* normal,
                    int nv, double* out) {
  double s = (order_across % 2 == 0) ? 1.0 : -1.0;
  for (int v = 0; v < nv; ++v) out[v] = s * d[v];
  if (nv >= 3) {
    double mn = out[1] * normal[0] + (nv == 4 ? out[2] * normal[1] : 0.0);
    out[1] -= 2.0 * mn * normal[0];
    if (nv == 4) out[2] -= 2.0 * mn * normal[1];
  }
}

}  // namespace

JumpData compute_jump_data(const DGOperator1D& op, const ModalField& u,
                           double t) {
  const Mesh1D& mesh = op.mesh();
  const Equation& eq = op.equation();
  const int k = op.degree(), nv = eq.n_vars, n = mesh.n_cells;
  JumpData jd;
  jd.n_cells = n;
  jd.n_levels = k + 1;
  jd.n_vars = nv;
  jd.jv.assign(static_cast<size_t>(n) * (k + 1) * nv, 0.0);

  auto accumulate = [&](int cell, const double jump[KP][NV]) {
    if (cell < 0 || cell >= n) return;
    double* dst = &jd.jv[(static_cast<size_t>(cell) * (k + 1)) * nv];
    for (int m = 0; m <= k; ++m)
      for (int v = 0; v < nv; ++v)
        dst[m * nv + v] += std::abs(jump[m][v]);
  };

  for (int f = 0; f <= n; ++f) {
    int lc = f - 1, rc = f;
    double dL[KP][NV], dR[KP][NV], jump[KP][NV];
    bool have_l = lc >= 0, have_r = rc < n;
    const BoundaryTag* bc = nullptr;
    if (!have_l) bc = &mesh.bc_left;
    if (!have_r) bc = &mesh.bc_right;
    if (bc && bc->kind == BCKind::periodic) {
      if (f == n) continue;  // the seam is handled once, at f = 0
      lc = have_l ? lc : n - 1;
      rc = have_r ? rc : 0;
      have_l = have_r = true;
      bc = nullptr;
    }
    if (have_l)
      for (int v = 0; v < nv; ++v) {
        double d[KP];
        op.trace_derivatives(u, lc, 1, v, d);
        for (int m = 0; m <= k; ++m) dL[m][v] = d[m];
      }
    if (have_r)
      for (int v = 0; v < nv; ++v) {
        double d[KP];
        op.trace_derivatives(u, rc, 0, v, d);
        for (int m = 0; m <= k; ++m) dR[m][v] = d[m];
      }
    if (have_l && have_r) {
      for (int m = 0; m <= k; ++m)
        for (int v = 0; v < nv; ++v) jump[m][v] = dR[m][v] - dL[m][v];
    } else {
      // Boundary face: build the ghost's derivative traces.
      if (bc->kind == BCKind::outflow) continue;  // ghost copies all traces
      double (&din)[KP][NV] = have_l ? dL : dR;
      double (&dgh)[KP][NV] = have_l ? dR : dL;
      double normal[2] = {have_l ? 1.0 : -1.0, 0.0};
      double x = have_l ? mesh.b : mesh.a;
      std::memset(dgh, 0, sizeof(dgh));
      switch (bc->kind) {
        case BCKind::reflective:
          for (int m = 0; m <= k; ++m)
            reflect_derivs(din[m], m, normal, nv, dgh[m]);
          break;
        case BCKind::inflow:
          for (int v = 0; v < nv; ++v) dgh[0][v] = bc->state[v];
          break;
        case BCKind::dirichlet_fn:
          bc->fn(x, 0.0, t, din[0], normal, dgh[0]);
          break;
        default:
          break;
      }
      for (int m = 0; m <= k; ++m)
        for (int v = 0; v < nv; ++v) jump[m][v] = dR[m][v] - dL[m][v];
    }
    if (have_l) accumulate(lc, jump);
    if (have_r) accumulate(rc, jump);
  }
  return jd;
}

JumpData compute_jump_data(const DGOperator2D& op, const ModalField& u,
                           double t) {
  const Mesh2D& mesh = op.mesh();
  const Equation& eq = op.equation();
  const int k = op.degree(), nv = eq.n_vars, kp = k + 1;
  JumpData jd;
  jd.two_dim = true;
  jd.n_cells = mesh.nx * mesh.ny;
  jd.n_levels = kp;
  jd.n_vars = nv;
  jd.jv.assign(static_cast<size_t>(jd.n_cells) * kp * nv, 0.0);
  jd.jh.assign(static_cast<size_t>(jd.n_cells) * kp * nv, 0.0);

  const int tsz = kp * kp * 3 * nv;
  std::vector<double> din(tsz), dex(tsz);
  auto at = [&](std::vector<double>& d, int a, int b, int tp, int v) -> double& {
    return d[((a * kp + b) * 3 + tp) * nv + v];
  };

  // Each active cell walks its own four faces; interior faces are visited
  // from both sides, which keeps the accumulation write-local per cell.
  for (int cj = 0; cj < mesh.ny; ++cj)
    for (int ci = 0; ci < mesh.nx; ++ci) {
      int cell = mesh.idx(ci, cj);
      if (!mesh.active[cell]) continue;
      for (int face = 0; face < 4; ++face) {
        bool vertical = face < 2;
        int nb = op.neighbor(cell, face);
        op.edge_deriv_traces(u, cell, face, din.data());
        if (nb >= 0) {
          op.edge_deriv_traces(u, nb, face ^ 1, dex.data());
        } else {
          const BoundaryTag& bc = op.boundary_tag(cell, face);
          if (bc.kind == BCKind::outflow) continue;
          std::memset(dex.data(), 0, sizeof(double) * tsz);
          double normal[2] = {0, 0};
          if (vertical)
            normal[0] = face == 1 ? 1.0 : -1.0;
          else
            normal[1] = face == 3 ? 1.0 : -1.0;
          double fx0 = mesh.x0 + (ci + (face == 1 ? 1 : 0)) * mesh.hx;
          double fy0 = mesh.y0 + (cj + (face == 3 ? 1 : 0)) * mesh.hy;
          for (int tp = 0; tp < 3; ++tp) {
            double x = vertical ? fx0 : mesh.x0 + (ci + 0.5 * tp) * mesh.hx;
            double y = vertical ? mesh.y0 + (cj + 0.5 * tp) * mesh.hy : fy0;
            switch (bc.kind) {
              case BCKind::reflective:
                for (int a = 0; a <= k; ++a)
                  for (int b = 0; a + b <= k; ++b)
                    reflect_derivs(&at(din, a, b, tp, 0),
                                   vertical ? a : b, normal, nv,
                                   &at(dex, a, b, tp, 0));
                break;
              case BCKind::inflow:
                for (int v = 0; v < nv; ++v)
                  at(dex, 0, 0, tp, v) = bc.state[v];
                break;
              case BCKind::dirichlet_fn:
                bc.fn(x, y, t, &at(din, 0, 0, tp, 0), normal,
                      &at(dex, 0, 0, tp, 0));
                break;
              default:
                break;
            }
          }
        }
        double* dst = vertical
                          ? &jd.jv[static_cast<size_t>(cell) * kp * nv]
                          : &jd.jh[static_cast<size_t>(cell) * kp * nv];
        for (int a = 0; a <= k; ++a)
          for (int b = 0; a + b <= k; ++b) {
            int m = a + b;
            for (int tp = 0; tp < 3; ++tp)
              for (int v = 0; v < nv; ++v)
                dst[m * nv + v] += kTrap[tp] * std::abs(at(dex, a, b, tp, v) -
                                                        at(din, a, b, tp, v));
          }
      }
    }
  return jd;
}

double damping_rates(const DGOperator1D& op, const JumpData& jd,
                     const ModalField& u, int cell, const FilterParams& fp,
                     double* rates) {
  const Equation& eq = op.equation();
  const int k = op.degree(), nv = eq.n_vars;
  const double h = op.mesh().h;
  const double* avg = u.cell_ptr(cell);

  // T_l per variable: h J_0 + sum_{m<=l} m(m+1) h^{m+1} J_m.
  double T[KP][NV];
  double hp = h;
  for (int v = 0; v < nv; ++v) T[0][v] = h * jd.v(cell, 0, v);
  for (int m = 1; m <= k; ++m) {
    hp *= h;
    for (int v = 0; v < nv; ++v)
      T[m][v] = T[m - 1][v] + m * (m + 1) * hp * jd.v(cell, m, v);
  }

  bool custom = fp.policy == FilterParams::Policy::custom;
  double beta = custom ? 0.0 : eq.max_wave_speed(avg, 0, cell);
  double invH =
      fp.policy == FilterParams::Policy::euler_1d ? 1.0 / eq.enthalpy(avg)
                                                  : 1.0;
  double inv_h2 = 4.0 / (h * h);
  rates[0] = 0.0;
  double sigma_top = 0.0;
  for (int l = 1; l <= k; ++l) {
    int lev = fp.mode == FilterParams::Mode::full ? k : l;
    double tmax = 0.0;
    for (int v = 0; v < nv; ++v) tmax = std::max(tmax, T[lev][v]);
    double cf = custom ? fp.c_custom_x
                       : beta * invH / (4.0 * lev * (lev + 1));
    double sigma = cf * tmax;
    rates[l] = sigma * inv_h2 * l * (l + 1);
    if (l == k) sigma_top = sigma;
  }
  return sigma_top;
}

double damping_rates(const DGOperator2D& op, const JumpData& jd,
                     const ModalField& u, int cell, const FilterParams& fp,
                     double* rates) {
  const Equation& eq = op.equation();
  const int k = op.degree(), nv = eq.n_vars;
  const double hx = op.mesh().hx, hy = op.mesh().hy;
  const double* avg = u.cell_ptr(cell);

  double Tv[KP][NV], Th[KP][NV];
  double hpv = hy, hph = hx;
  for (int v = 0; v < nv; ++v) {
    Tv[0][v] = hy * jd.v(cell, 0, v);
    Th[0][v] = hx * jd.h(cell, 0, v);
  }
  for (int m = 1; m <= k; ++m) {
    hpv *= hy;
    hph *= hx;
    for (int v = 0; v < nv; ++v) {
      Tv[m][v] = Tv[m - 1][v] + m * (m + 1) * hpv * jd.v(cell, m, v);
      Th[m][v] = Th[m - 1][v] + m * (m + 1) * hph * jd.h(cell, m, v);
    }
  }

  bool custom = fp.policy == FilterParams::Policy::custom;
  double bx = custom ? 0.0 : eq.max_wave_speed(avg, 0, cell);
  double by = custom ? 0.0 : eq.max_wave_speed(avg, 1, cell);
  double invH =
      fp.policy == FilterParams::Policy::euler_2d ? 1.0 / eq.enthalpy(avg)
                                                  : 1.0;
  const auto& modes = op.modes();
  double inv_area = 4.0 / (hx * hy);
  double sigma_top = 0.0;
  rates[0] = 0.0;
  for (int m = 1; m < op.n_modes(); ++m) {
    auto [p, q] = modes[m];
    int l = fp.mode == FilterParams::Mode::full ? k : p + q;
    double lam = sl_eigenvalue_2d(p, q);
    double cfx = custom ? fp.c_custom_x : hy * bx * invH / (4.0 * lam);
    double cfy = custom ? fp.c_custom_y : hx * by * invH / (4.0 * lam);
    double sig = 0.0;
    for (int v = 0; v < nv; ++v)
      sig = std::max(sig, cfx * Tv[l][v] + cfy * Th[l][v]);
    rates[m] = sig * inv_area * lam;
    if (p + q == k) sigma_top = std::max(sigma_top, sig);
  }
  return sigma_top;
}

namespace {

bool cell_in_domain(const DGOperator1D&, int) { return true; }
bool cell_in_domain(const DGOperator2D& op, int cell) {
  return op.mesh().active[cell] != 0;
}

template <class Op>
void apply_filter_impl(const Op& op, ModalField& u, double dt,
                       const FilterParams& fp, double t,
                       std::vector<double>* sigma_top) {
  if (!fp.enabled || op.degree() == 0) {
    if (sigma_top) sigma_top->assign(u.n_cells, 0.0);
    return;
  }
  JumpData jd = compute_jump_data(op, u, t);
  if (sigma_top) sigma_top->assign(u.n_cells, 0.0);
  const int nv = u.n_vars, nm = u.n_modes;
  double rates[kMaxModes2D];
  for (int cell = 0; cell < u.n_cells; ++cell) {
    if (!cell_in_domain(op, cell)) continue;
    double s = damping_rates(op, jd, u, cell, fp, rates);
    if (sigma_top) (*sigma_top)[cell] = s;
    double* c = u.cell_ptr(cell);
    for (int m = 1; m < nm; ++m) {
      if (rates[m] == 0.0) continue;  // exact identity on jump-free data
      double f = std::exp(-rates[m] * dt);
      for (int v = 0; v < nv; ++v) c[m * nv + v] *= f;
    }
  }
}

}  // namespace

void apply_filter(const DGOperator1D& op, ModalField& u, double dt,
                  const FilterParams& fp, double t,
                  std::vector<double>* sigma_top) {
  apply_filter_impl(op, u, dt, fp, t, sigma_top);
}

void apply_filter(const DGOperator2D& op, ModalField& u, double dt,
                  const FilterParams& fp, double t,
                  std::vector<double>* sigma_top) {
  apply_filter_impl(op, u, dt, fp, t, sigma_top);
}

}  // namespace jumpdg

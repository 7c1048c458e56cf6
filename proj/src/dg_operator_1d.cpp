#include <cmath>
#include <limits>

#include "jumpdg/dg_operator.hpp"

namespace jumpdg {

DGOperator1D::DGOperator1D(const Mesh1D& mesh, const Equation& eq, int k)
    : mesh_(mesh), eq_(eq), k_(k), basis_(k) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("degree k must be in [0,4]");
  if (eq.dim != 1) throw ConfigError("1D operator needs a 1D equation");
}

void DGOperator1D::project(const std::function<void(double, double*)>& f,
                           ModalField& u, int subdiv) const {
  const int nv = eq_.n_vars, nm = k_ + 1;
  QuadRule q = gauss_legendre(k_ + 3);
  const double h = mesh_.h;
  for (int j = 0; j < mesh_.n_cells; ++j) {
    double* c = u.cell_ptr(j);
    for (int i = 0; i < nm * nv; ++i) c[i] = 0.0;
    double sh = h / subdiv;
    for (int s = 0; s < subdiv; ++s) {
      double a = mesh_.cell_left(j) + s * sh;
      for (size_t i = 0; i < q.nodes.size(); ++i) {
        double x = a + 0.5 * sh * (q.nodes[i] + 1.0);
        double xi = 2.0 * (x - mesh_.cell_left(j)) / h - 1.0;
        double st[kMaxVars] = {0, 0, 0, 0};
        f(x, st);
        for (int l = 0; l <= k_; ++l) {
          double wP = (2 * l + 1) / h * 0.5 * sh * q.weights[i] *
                      eval_legendre(l, xi);
          for (int v = 0; v < nv; ++v) c[l * nv + v] += wP * st[v];
        }
      }
    }
  }
  u.time = 0.0;
}

void DGOperator1D::trace(const ModalField& u, int cell, int side,
                         double* out) const {
  const int nv = eq_.n_vars;
  const double* c = u.cell_ptr(cell);
  for (int v = 0; v < nv; ++v) out[v] = 0.0;
  for (int l = 0; l <= k_; ++l) {
    double s = (side == 1 || l % 2 == 0) ? 1.0 : -1.0;
    for (int v = 0; v < nv; ++v) out[v] += s * c[l * nv + v];
  }
}

void DGOperator1D::trace_derivatives(const ModalField& u, int cell, int side,
                                     int var, double* out) const {
  const int nv = eq_.n_vars;
  const double* c = u.cell_ptr(cell);
  double scale = 1.0;
  for (int m = 0; m <= k_; ++m) {
    double acc = 0.0;
    for (int l = 0; l <= k_; ++l)
      acc += c[l * nv + var] * basis_.end_deriv(l, m, side);
    out[m] = scale * acc;
    scale *= 2.0 / mesh_.h;
  }
}

void DGOperator1D::exterior_trace(const ModalField& u, int cell, int side,
                                  double t, double* out) const {
  const int nv = eq_.n_vars;
  const int n = mesh_.n_cells;
  bool left_face = (side == 0);
  bool boundary = left_face ? (cell == 0) : (cell == n - 1);
  if (!boundary) {
    trace(u, left_face ? cell - 1 : cell + 1, left_face ? 1 : 0, out);
    return;
  }
  const BoundaryTag& bc = left_face ? mesh_.bc_left : mesh_.bc_right;
  if (bc.kind == BCKind::periodic) {
    trace(u, left_face ? n - 1 : 0, left_face ? 1 : 0, out);
    return;
  }
  double interior[kMaxVars];
  trace(u, cell, side, interior);
  double x = left_face ? mesh_.a : mesh_.b;
  double normal[2] = {left_face ? -1.0 : 1.0, 0.0};
  ghost_state(bc, x, 0.0, t, interior, normal, nv, out);
}

void DGOperator1D::eval_cell(const ModalField& u, int cell,
                             double* out) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad;
  const double* c = u.cell_ptr(cell);
  for (int q = 0; q < nq; ++q)
    for (int v = 0; v < nv; ++v) {
      double acc = 0.0;
      for (int l = 0; l <= k_; ++l) acc += c[l * nv + v] * basis_.value(l, q);
      out[q * nv + v] = acc;
    }
}

void DGOperator1D::residual(const ModalField& u, double t, ModalField& out,
                            Workspace* ws) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad, n = mesh_.n_cells;
  Workspace local;
  if (!ws) ws = &local;
  ws->vflux.resize(static_cast<size_t>(n + 1) * nv);

  // LLF dissipation speeds come from the cell averages (the states max_dt
  // measures), not the traces: a positivity-floored trace point can carry a
  // near-infinite sound speed that would blow up the face flux.
  ws->wspeed.resize(n);
  for (int j = 0; j < n; ++j)
    ws->wspeed[j] = eq_.max_wave_speed(u.cell_ptr(j), 0, j);
  auto ghost_speed = [&](const BoundaryTag& bc, double x, const double* avg,
                         double nrm) {
    double normal[2] = {nrm, 0.0};
    double g[kMaxVars];
    ghost_state(bc, x, 0.0, t, avg, normal, nv, g);
    return eq_.max_wave_speed(g, 0);
  };

  // Interface fluxes, one pass over faces. Periodic wrap keeps the two
  // images of the seam face bit-identical, so the total flux telescopes.
  for (int f = 0; f <= n; ++f) {
    double sl[kMaxVars], sr[kMaxVars];
    if (f > 0)
      trace(u, f - 1, 1, sl);
    else
      exterior_trace(u, 0, 0, t, sl);
    if (f < n)
      trace(u, f, 0, sr);
    else
      exterior_trace(u, n - 1, 1, t, sr);
    double a_l = (f > 0) ? ws->wspeed[f - 1]
                 : mesh_.bc_left.kind == BCKind::periodic
                     ? ws->wspeed[n - 1]
                     : ghost_speed(mesh_.bc_left, mesh_.a, u.cell_ptr(0), -1.0);
    double a_r = (f < n) ? ws->wspeed[f]
                 : mesh_.bc_right.kind == BCKind::periodic
                     ? ws->wspeed[0]
                     : ghost_speed(mesh_.bc_right, mesh_.b,
                                   u.cell_ptr(n - 1), 1.0);
    eq_.llf_alpha(sl, sr, 0, std::max(a_l, a_r),
                  &ws->vflux[static_cast<size_t>(f) * nv], f < n ? f : n - 1);
  }

  const double h = mesh_.h;
  for (int j = 0; j < n; ++j) {
    double vals[kMaxQuad1D * kMaxVars];
    eval_cell(u, j, vals);
    double fq[kMaxQuad1D * kMaxVars];
    for (int q = 0; q < nq; ++q)
      eq_.flux(&vals[q * nv], 0, &fq[q * nv], j);
    const double* fl = &ws->vflux[static_cast<size_t>(j) * nv];
    const double* fr = &ws->vflux[static_cast<size_t>(j + 1) * nv];
    double* r = out.cell_ptr(j);
    for (int l = 0; l <= k_; ++l) {
      double sgn = (l % 2 == 0) ? 1.0 : -1.0;
      for (int v = 0; v < nv; ++v) {
        double acc = 0.0;
        for (int q = 0; q < nq; ++q)
          acc += basis_.weights[q] * fq[q * nv + v] * basis_.deriv(l, q);
        r[l * nv + v] = (acc - fr[v] + sgn * fl[v]) * (2 * l + 1) / h;
      }
    }
  }
  out.time = u.time;
}

double DGOperator1D::max_dt(const ModalField& u, double cfl) const {
  double beta = 0.0;
  for (int j = 0; j < mesh_.n_cells; ++j) {
    double w = eq_.max_wave_speed(u.cell_ptr(j), 0, j);
    if (std::isnan(w)) return w;  // blown-up field: let the caller diagnose
    beta = std::max(beta, w);
  }
  // Prescribed boundary data can move faster than anything in the interior
  // yet (an impulsively started inflow), so ghost states join the bound.
  auto boundary_speed = [&](const BoundaryTag& bc, double x,
                            const double* interior, double nrm) {
    if (bc.kind != BCKind::inflow && bc.kind != BCKind::dirichlet_fn) return;
    State g{};
    const double normal[2] = {nrm, 0.0};
    ghost_state(bc, x, 0.0, u.time, interior, normal, eq_.n_vars, g.data());
    beta = std::max(beta, eq_.max_wave_speed(g.data(), 0));
  };
  boundary_speed(mesh_.bc_left, mesh_.a, u.cell_ptr(0), -1.0);
  boundary_speed(mesh_.bc_right, mesh_.b, u.cell_ptr(mesh_.n_cells - 1), 1.0);
  if (beta <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl * mesh_.h / beta;
}

std::array<double, 2> DGOperator1D::error_norms(
    const ModalField& u, const std::function<void(double, double*)>& exact,
    int var) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad;
  double l2 = 0.0, linf = 0.0;
  double vals[kMaxQuad1D * kMaxVars];
  for (int j = 0; j < mesh_.n_cells; ++j) {
    eval_cell(u, j, vals);
    for (int q = 0; q < nq; ++q) {
      double x = mesh_.cell_left(j) + 0.5 * mesh_.h * (basis_.nodes[q] + 1.0);
      double st[kMaxVars] = {0, 0, 0, 0};
      exact(x, st);
      double d = vals[q * nv + var] - st[var];
      l2 += 0.5 * mesh_.h * basis_.weights[q] * d * d;
      linf = std::max(linf, std::abs(d));
    }
  }
  return {std::sqrt(l2), linf};
}

State DGOperator1D::total_integral(const ModalField& u) const {
  State s{};
  for (int j = 0; j < mesh_.n_cells; ++j)
    for (int v = 0; v < eq_.n_vars; ++v)
      s[v] += mesh_.h * u.cell_average(j, v);
  return s;
}

}  // namespace jumpdg

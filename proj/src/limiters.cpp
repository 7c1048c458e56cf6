#include "jumpdg/limiters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jumpdg {

namespace {

constexpr int NV = kMaxVars;
// Safety shrink applied to the scaling factors so the limiter output passes
// its own check with a real margin and a second sweep changes nothing.
constexpr double kShrink = 1.0 - 1e-8;
// Density test points are kept at this fraction of the cell average rather
// than at the bare eps. Lifting a deep undershoot only to eps parks a
// near-vacuum value under O(1) pressure at a trace point, and the m/rho
// velocity there turns the next energy flux into a bomb. The relative floor
// bounds that velocity by sqrt(2E / (0.1 rho_bar)) and collapses to the
// absolute floor as the average itself approaches vacuum.
constexpr double kRelFloor = 0.1;

/// Collects solution values at a cell's test points (volume quadrature plus
/// face flux points). Returns the point count.
template <class Op>
int gather_points(const Op& op, const ModalField& u, int cell, double* pts);

template <>
int gather_points(const DGOperator1D& op, const ModalField& u, int cell,
                  double* pts) {
  const int nq = op.basis().n_quad, nv = u.n_vars;
  op.eval_cell(u, cell, pts);
  op.trace(u, cell, 0, pts + nq * nv);
  op.trace(u, cell, 1, pts + (nq + 1) * nv);
  return nq + 2;
}

template <>
int gather_points(const DGOperator2D& op, const ModalField& u, int cell,
                  double* pts) {
  const int nq = op.basis().n_quad, nv = u.n_vars;
  op.eval_cell(u, cell, pts);
  for (int face = 0; face < 4; ++face)
    op.edge_trace(u, cell, face, pts + (nq * nq + face * nq) * nv);
  return nq * nq + 4 * nq;
}

template <class Op>
bool cell_active(const Op& op, int cell);
template <>
bool cell_active(const DGOperator1D&, int) { return true; }
template <>
bool cell_active(const DGOperator2D& op, int cell) {
  return op.mesh().active[cell] != 0;
}

double mesh_hmin(const DGOperator1D& op) { return op.mesh().h; }
double mesh_hmin(const DGOperator2D& op) {
  return std::min(op.mesh().hx, op.mesh().hy);
}

template <class Op>
PPStats pp_impl(const Op& op, ModalField& u, double eps) {
  PPStats st;
  st.min_rho = std::numeric_limits<double>::infinity();
  st.min_p = std::numeric_limits<double>::infinity();
  const Equation& eq = op.equation();
  if (!eq.is_euler()) return st;
  const int nv = u.n_vars, nm = u.n_modes;
  std::vector<double> pts(4096);
  for (int cell = 0; cell < u.n_cells; ++cell) {
    if (!cell_active(op, cell)) continue;
    double* c = u.cell_ptr(cell);
    double rho_bar = c[0];
    double p_bar = eq.pressure(c);
    if (!(rho_bar > eps) || !(p_bar > eps))
      throw AdmissibilityError(
          "cell average lost positivity (rho = " + std::to_string(rho_bar) +
              ", p = " + std::to_string(p_bar) + ") in cell " +
              std::to_string(cell),
          cell);
    int np = gather_points(op, u, cell, pts.data());

    double rho_min = rho_bar;
    for (int i = 0; i < np; ++i) rho_min = std::min(rho_min, pts[i * nv]);
    const double rho_floor = std::max(eps, kRelFloor * rho_bar);
    if (rho_min < rho_floor) {
      double theta = (rho_bar - rho_floor) / (rho_bar - rho_min) * kShrink;
      for (int m = 1; m < nm; ++m) c[m * nv] *= theta;
      for (int i = 0; i < np; ++i)
        pts[i * nv] = rho_bar + theta * (pts[i * nv] - rho_bar);
      ++st.n_rho_limited;
    }

    double theta2 = 1.0;
    for (int i = 0; i < np; ++i) {
      double p = eq.pressure(&pts[i * nv]);
      if (p < eps) theta2 = std::min(theta2, (p_bar - eps) / (p_bar - p));
    }
    if (theta2 < 1.0) {
      theta2 = std::max(0.0, theta2 * kShrink);
      for (int m = 1; m < nm; ++m)
        for (int v = 0; v < nv; ++v) c[m * nv + v] *= theta2;
      ++st.n_p_limited;
      np = gather_points(op, u, cell, pts.data());
    }

    for (int i = 0; i < np; ++i) {
      st.min_rho = std::min(st.min_rho, pts[i * nv]);
      st.min_p = std::min(st.min_p, eq.pressure(&pts[i * nv]));
    }
  }
  return st;
}

template <class Op>
std::array<double, 2> scan_impl(const Op& op, const ModalField& u) {
  const Equation& eq = op.equation();
  std::array<double, 2> mins = {std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity()};
  if (!eq.is_euler()) return mins;
  std::vector<double> pts(4096);
  const int nv = u.n_vars;
  for (int cell = 0; cell < u.n_cells; ++cell) {
    if (!cell_active(op, cell)) continue;
    int np = gather_points(op, u, cell, pts.data());
    for (int i = 0; i < np; ++i) {
      mins[0] = std::min(mins[0], pts[i * nv]);
      mins[1] = std::min(mins[1], eq.pressure(&pts[i * nv]));
    }
  }
  return mins;
}

template <class Op>
int flatten_impl(const Op& op, ModalField& u, double frac) {
  const Equation& eq = op.equation();
  if (!eq.is_euler()) return 0;
  const int nv = u.n_vars, nm = u.n_modes;
  std::vector<double> pts(4096);
  int flattened = 0;
  for (int cell = 0; cell < u.n_cells; ++cell) {
    if (!cell_active(op, cell)) continue;
    double* c = u.cell_ptr(cell);
    double rho_bar = c[0];
    double p_bar = eq.pressure(c);
    // A bad average is pp_limiter's job to report.
    if (!(rho_bar > 0.0) || !(p_bar > 0.0)) continue;
    int np = gather_points(op, u, cell, pts.data());
    double rho_min = rho_bar, p_min = p_bar;
    for (int i = 0; i < np; ++i) {
      rho_min = std::min(rho_min, pts[i * nv]);
      p_min = std::min(p_min, eq.pressure(&pts[i * nv]));
    }
    if (rho_min < frac * rho_bar || p_min < frac * p_bar) {
      for (int m = 1; m < nm; ++m)
        for (int v = 0; v < nv; ++v) c[m * nv + v] = 0.0;
      ++flattened;
    }
  }
  return flattened;
}

template <class Op>
void hybrid_impl(const Op& op, ModalField& u, double dt,
                 const FilterParams& fp, const HybridParams& hp, double t,
                 std::vector<std::uint8_t>* troubled,
                 std::vector<double>* sigma_top) {
  if (troubled) troubled->assign(u.n_cells, 0);
  if (sigma_top) sigma_top->assign(u.n_cells, 0.0);
  if (op.degree() == 0) return;
  JumpData jd = compute_jump_data(op, u, t);
  const int nv = u.n_vars, nm = u.n_modes;
  double rates[kMaxModes2D];
  double hmin = mesh_hmin(op);
  for (int cell = 0; cell < u.n_cells; ++cell) {
    if (!cell_active(op, cell)) continue;
    double j0 = jd.v(cell, 0, 0) + (jd.two_dim ? jd.h(cell, 0, 0) : 0.0);
    double ind = j0 / (hmin * (std::abs(u.cell_average(cell, 0)) + hp.floor));
    if (!(ind > hp.threshold)) continue;
    double theta = hp.threshold / ind;
    double s = damping_rates(op, jd, u, cell, fp, rates);
    if (troubled) (*troubled)[cell] = 1;
    if (sigma_top) (*sigma_top)[cell] = s;
    double* c = u.cell_ptr(cell);
    for (int m = 1; m < nm; ++m) {
      double blend = theta + (1.0 - theta) * std::exp(-rates[m] * dt);
      for (int v = 0; v < nv; ++v) c[m * nv + v] *= blend;
    }
  }
}

}  // namespace

PPStats pp_limiter(const DGOperator1D& op, ModalField& u, double eps) {
  return pp_impl(op, u, eps);
}
PPStats pp_limiter(const DGOperator2D& op, ModalField& u, double eps) {
  return pp_impl(op, u, eps);
}

std::array<double, 2> admissibility_scan(const DGOperator1D& op,
                                         const ModalField& u) {
  return scan_impl(op, u);
}
std::array<double, 2> admissibility_scan(const DGOperator2D& op,
                                         const ModalField& u) {
  return scan_impl(op, u);
}

int flatten_undershoots(const DGOperator1D& op, ModalField& u, double frac) {
  return flatten_impl(op, u, frac);
}
int flatten_undershoots(const DGOperator2D& op, ModalField& u, double frac) {
  return flatten_impl(op, u, frac);
}

void hybrid_limit(const DGOperator1D& op, ModalField& u, double dt,
                  const FilterParams& fp, const HybridParams& hp, double t,
                  std::vector<std::uint8_t>* troubled,
                  std::vector<double>* sigma_top) {
  hybrid_impl(op, u, dt, fp, hp, t, troubled, sigma_top);
}
void hybrid_limit(const DGOperator2D& op, ModalField& u, double dt,
                  const FilterParams& fp, const HybridParams& hp, double t,
                  std::vector<std::uint8_t>* troubled,
                  std::vector<double>* sigma_top) {
  hybrid_impl(op, u, dt, fp, hp, t, troubled, sigma_top);
}

}  // namespace jumpdg

#include <cmath>
#include <cstring>
#include <limits>

#include "jumpdg/dg_operator.hpp"

namespace jumpdg {

namespace {
constexpr int KP = kMaxDegree + 1;   // 1D mode count cap
constexpr int NQ = kMaxQuad1D;       // quadrature point cap
constexpr int NV = kMaxVars;
}  // namespace

DGOperator2D::DGOperator2D(const Mesh2D& mesh, const Equation& eq, int k)
    : mesh_(mesh), eq_(eq), k_(k), basis_(k), modes_(modes_2d(k)) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("degree k must be in [0,4]");
  if (eq.dim != 2) throw ConfigError("2D operator needs a 2D equation");
  endd_.resize(static_cast<size_t>(k + 1) * (k + 1) * 2);
  tp_.resize(static_cast<size_t>(k + 1) * (k + 1) * 3);
  const double samples[3] = {-1.0, 0.0, 1.0};
  for (int m = 0; m <= k; ++m)
    for (int l = 0; l <= k; ++l) {
      endd_[(m * (k + 1) + l) * 2 + 0] = eval_legendre_deriv(l, m, -1.0);
      endd_[(m * (k + 1) + l) * 2 + 1] = eval_legendre_deriv(l, m, 1.0);
      for (int t = 0; t < 3; ++t)
        tp_[(m * (k + 1) + l) * 3 + t] = eval_legendre_deriv(l, m, samples[t]);
    }
}

void DGOperator2D::project(
    const std::function<void(double, double, double*)>& f, ModalField& u,
    int subdiv) const {
  const int nv = eq_.n_vars, nm = n_modes();
  QuadRule q = gauss_legendre(k_ + 3);
  const int nq = static_cast<int>(q.nodes.size());
  const double hx = mesh_.hx, hy = mesh_.hy;
  for (int cj = 0; cj < mesh_.ny; ++cj)
    for (int ci = 0; ci < mesh_.nx; ++ci) {
      int cell = mesh_.idx(ci, cj);
      double* c = u.cell_ptr(cell);
      std::memset(c, 0, sizeof(double) * nm * nv);
      if (!mesh_.active[cell]) continue;
      double xl = mesh_.x0 + ci * hx, yl = mesh_.y0 + cj * hy;
      double shx = hx / subdiv, shy = hy / subdiv;
      for (int sy = 0; sy < subdiv; ++sy)
        for (int sx = 0; sx < subdiv; ++sx)
          for (int b = 0; b < nq; ++b)
            for (int a = 0; a < nq; ++a) {
              double x = xl + sx * shx + 0.5 * shx * (q.nodes[a] + 1.0);
              double y = yl + sy * shy + 0.5 * shy * (q.nodes[b] + 1.0);
              double xi = 2.0 * (x - xl) / hx - 1.0;
              double eta = 2.0 * (y - yl) / hy - 1.0;
              double st[NV] = {0, 0, 0, 0};
              f(x, y, st);
              double wq = q.weights[a] * q.weights[b] * shx * shy / 4.0;
              for (int m = 0; m < nm; ++m) {
                auto [p, qq] = modes_[m];
                double phi = eval_legendre(p, xi) * eval_legendre(qq, eta);
                double scale =
                    (2 * p + 1) * (2 * qq + 1) / (hx * hy) * wq * phi;
                for (int v = 0; v < nv; ++v) c[m * nv + v] += scale * st[v];
              }
            }
    }
  u.time = 0.0;
}

double DGOperator2D::eval_at(const ModalField& u, int cell, double xi,
                             double eta, int var) const {
  const double* c = u.cell_ptr(cell);
  double acc = 0.0;
  for (int m = 0; m < n_modes(); ++m)
    acc += c[m * eq_.n_vars + var] * eval_legendre(modes_[m].p, xi) *
           eval_legendre(modes_[m].q, eta);
  return acc;
}

double DGOperator2D::deriv_at(const ModalField& u, int cell, int a, int b,
                              double xi, double eta, int var) const {
  const double* c = u.cell_ptr(cell);
  double acc = 0.0;
  for (int m = 0; m < n_modes(); ++m)
    acc += c[m * eq_.n_vars + var] * eval_legendre_deriv(modes_[m].p, a, xi) *
           eval_legendre_deriv(modes_[m].q, b, eta);
  return acc * std::pow(2.0 / mesh_.hx, a) * std::pow(2.0 / mesh_.hy, b);
}

void DGOperator2D::eval_cell(const ModalField& u, int cell,
                             double* out) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad, nm = n_modes();
  const double* c = u.cell_ptr(cell);
  double txq[NQ][KP][NV];
  std::memset(txq, 0, sizeof(txq));
  for (int m = 0; m < nm; ++m) {
    auto [p, q] = modes_[m];
    for (int a = 0; a < nq; ++a) {
      double Pa = basis_.value(p, a);
      for (int v = 0; v < nv; ++v) txq[a][q][v] += Pa * c[m * nv + v];
    }
  }
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b)
      for (int v = 0; v < nv; ++v) {
        double acc = 0.0;
        for (int q = 0; q <= k_; ++q) acc += txq[a][q][v] * basis_.value(q, b);
        out[(a * nq + b) * nv + v] = acc;
      }
}

void DGOperator2D::edge_trace(const ModalField& u, int cell, int face,
                              double* out) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad, nm = n_modes();
  const double* c = u.cell_ptr(cell);
  // Contract the across-face direction at the fixed endpoint, then evaluate
  // the along-face polynomial at the edge quadrature nodes.
  double bq[KP][NV];
  std::memset(bq, 0, sizeof(bq));
  bool vertical = (face == 0 || face == 1);
  int side = (face == 1 || face == 3) ? 1 : 0;
  for (int m = 0; m < nm; ++m) {
    auto [p, q] = modes_[m];
    int across = vertical ? p : q;
    int along = vertical ? q : p;
    double e = (side == 1 || across % 2 == 0) ? 1.0 : -1.0;
    for (int v = 0; v < nv; ++v) bq[along][v] += e * c[m * nv + v];
  }
  for (int pt = 0; pt < nq; ++pt)
    for (int v = 0; v < nv; ++v) {
      double acc = 0.0;
      for (int l = 0; l <= k_; ++l) acc += bq[l][v] * basis_.value(l, pt);
      out[pt * nv + v] = acc;
    }
}

void DGOperator2D::edge_deriv_traces(const ModalField& u, int cell, int face,
                                     double* out) const {
  const int nv = eq_.n_vars, nm = n_modes();
  const int kp = k_ + 1;
  const double* c = u.cell_ptr(cell);
  bool vertical = (face == 0 || face == 1);
  int side = (face == 1 || face == 3) ? 1 : 0;
  // ca[da][l][v]: across-face derivative order da contracted at the face,
  // leaving the along-face 1D coefficients.
  double ca[KP][KP][NV];
  std::memset(ca, 0, sizeof(ca));
  for (int m = 0; m < nm; ++m) {
    auto [p, q] = modes_[m];
    int across = vertical ? p : q;
    int along = vertical ? q : p;
    for (int da = 0; da <= k_; ++da) {
      double e = endd_[(da * kp + across) * 2 + side];
      if (e == 0.0) continue;
      for (int v = 0; v < nv; ++v) ca[da][along][v] += e * c[m * nv + v];
    }
  }
  double cx = 2.0 / mesh_.hx, cy = 2.0 / mesh_.hy;
  for (int a = 0; a <= k_; ++a)
    for (int b = 0; a + b <= k_; ++b) {
      int da = vertical ? a : b;   // across-face order
      int db = vertical ? b : a;   // along-face order
      double chain = std::pow(cx, a) * std::pow(cy, b);
      for (int t = 0; t < 3; ++t)
        for (int v = 0; v < nv; ++v) {
          double acc = 0.0;
          for (int l = 0; l <= k_; ++l)
            acc += ca[da][l][v] * tp_[(db * kp + l) * 3 + t];
          out[((a * kp + b) * 3 + t) * nv + v] = chain * acc;
        }
    }
}

int DGOperator2D::neighbor(int cell, int face) const {
  int i = cell % mesh_.nx, j = cell / mesh_.nx;
  int ii = i, jj = j;
  switch (face) {
    case 0: ii = i - 1; break;
    case 1: ii = i + 1; break;
    case 2: jj = j - 1; break;
    case 3: jj = j + 1; break;
  }
  if (ii < 0 || ii >= mesh_.nx) {
    if (mesh_.bc_west.kind != BCKind::periodic) return -1;
    ii = (ii + mesh_.nx) % mesh_.nx;
  }
  if (jj < 0 || jj >= mesh_.ny) {
    if (mesh_.bc_south.kind != BCKind::periodic) return -1;
    jj = (jj + mesh_.ny) % mesh_.ny;
  }
  return mesh_.active[mesh_.idx(ii, jj)] ? mesh_.idx(ii, jj) : -1;
}

const BoundaryTag& DGOperator2D::boundary_tag(int cell, int face) const {
  int i = cell % mesh_.nx, j = cell / mesh_.nx;
  bool outer = (face == 0 && i == 0) || (face == 1 && i == mesh_.nx - 1) ||
               (face == 2 && j == 0) || (face == 3 && j == mesh_.ny - 1);
  if (!outer) return mesh_.mask_wall;
  switch (face) {
    case 0: return mesh_.bc_west;
    case 1: return mesh_.bc_east;
    case 2: return mesh_.bc_south;
    default: return mesh_.bc_north;
  }
}

void DGOperator2D::residual(const ModalField& u, double t, ModalField& out,
                            Workspace* ws) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad, nm = n_modes();
  const int nx = mesh_.nx, ny = mesh_.ny;
  const int kp = k_ + 1;
  const double hx = mesh_.hx, hy = mesh_.hy;
  Workspace local;
  if (!ws) ws = &local;
  ws->side.resize(static_cast<size_t>(nx) * ny * 4 * kp * nv);
  ws->vflux.resize(static_cast<size_t>(nx + 1) * ny * nq * nv);
  ws->hflux.resize(static_cast<size_t>(ny + 1) * nx * nq * nv);

  // Pass 1: per-cell face coefficient vectors (the across-face direction
  // contracted at each of the four faces), plus the cell-average wave
  // speeds. LLF dissipation speeds come from the averages (the states
  // max_dt measures), not the traces: a positivity-floored trace point can
  // carry a near-infinite sound speed that would blow up the face flux.
  auto side_ptr = [&](int cell, int face) {
    return &ws->side[(static_cast<size_t>(cell) * 4 + face) * kp * nv];
  };
  ws->wspeed.resize(static_cast<size_t>(nx) * ny * 2);
  parallel_for(nx * ny, [&](int cb, int ce) {
    for (int cell = cb; cell < ce; ++cell) {
      if (!mesh_.active[cell]) continue;
      const double* c = u.cell_ptr(cell);
      double* sW = side_ptr(cell, 0);
      double* sE = side_ptr(cell, 1);
      double* sS = side_ptr(cell, 2);
      double* sN = side_ptr(cell, 3);
      std::memset(sW, 0, sizeof(double) * 4 * kp * nv);
      for (int m = 0; m < nm; ++m) {
        auto [p, q] = modes_[m];
        double sp = (p % 2 == 0) ? 1.0 : -1.0;
        double sq = (q % 2 == 0) ? 1.0 : -1.0;
        for (int v = 0; v < nv; ++v) {
          double cv = c[m * nv + v];
          sW[q * nv + v] += sp * cv;
          sE[q * nv + v] += cv;
          sS[p * nv + v] += sq * cv;
          sN[p * nv + v] += cv;
        }
      }
      ws->wspeed[2 * cell + 0] = eq_.max_wave_speed(c, 0, cell);
      ws->wspeed[2 * cell + 1] = eq_.max_wave_speed(c, 1, cell);
    }
  });

  auto eval_side = [&](const double* bq, int pt, double* st) {
    for (int v = 0; v < nv; ++v) {
      double acc = 0.0;
      for (int l = 0; l <= k_; ++l) acc += bq[l * nv + v] * basis_.value(l, pt);
      st[v] = acc;
    }
  };
  auto ghost_speed = [&](const BoundaryTag& bc, double x, double y,
                         const double* avg, const double* normal, int dir) {
    double g[NV];
    ghost_state(bc, x, y, t, avg, normal, nv, g);
    return eq_.max_wave_speed(g, dir);
  };

  // Pass 2: vertical faces (flux along +x), then horizontal faces (+y).
  for (int j = 0; j < ny; ++j)
    for (int fi = 0; fi <= nx; ++fi) {
      int lc = fi - 1, rc = fi;
      bool lwrap = false, rwrap = false;
      if (lc < 0 && mesh_.bc_west.kind == BCKind::periodic) {
        lc = nx - 1;
        lwrap = true;
      }
      if (rc >= nx && mesh_.bc_east.kind == BCKind::periodic) {
        rc = 0;
        rwrap = true;
      }
      bool la = lc >= 0 && lc < nx && mesh_.active[mesh_.idx(lc, j)];
      bool ra = rc >= 0 && rc < nx && mesh_.active[mesh_.idx(rc, j)];
      if (!la && !ra) continue;
      double* fx = &ws->vflux[(static_cast<size_t>(j) * (nx + 1) + fi) * nq * nv];
      double xf = mesh_.x0 + fi * hx;
      const BoundaryTag* bc = nullptr;
      double normal[2] = {0, 0};
      if (!la || !ra) {
        bool outer_w = (fi == 0 && !lwrap), outer_e = (fi == nx && !rwrap);
        bc = outer_w ? &mesh_.bc_west
                     : outer_e ? &mesh_.bc_east : &mesh_.mask_wall;
        normal[0] = la ? 1.0 : -1.0;  // outward from the interior side
      }
      double a_l = la ? ws->wspeed[2 * mesh_.idx(lc, j)] : 0.0;
      double a_r = ra ? ws->wspeed[2 * mesh_.idx(rc, j)] : 0.0;
      if (!la || !ra) {
        int ic = la ? mesh_.idx(lc, j) : mesh_.idx(rc, j);
        double gs =
            ghost_speed(*bc, xf, mesh_.cell_y(j), u.cell_ptr(ic), normal, 0);
        (la ? a_r : a_l) = gs;
      }
      const double alpha = std::max(a_l, a_r);
      for (int pt = 0; pt < nq; ++pt) {
        double sl[NV], sr[NV];
        if (la) eval_side(side_ptr(mesh_.idx(lc, j), 1), pt, sl);
        if (ra) eval_side(side_ptr(mesh_.idx(rc, j), 0), pt, sr);
        if (!la || !ra) {
          double y = mesh_.y0 + j * hy + 0.5 * hy * (basis_.nodes[pt] + 1.0);
          if (la)
            ghost_state(*bc, xf, y, t, sl, normal, nv, sr);
          else
            ghost_state(*bc, xf, y, t, sr, normal, nv, sl);
        }
        eq_.llf_alpha(sl, sr, 0, alpha, &fx[pt * nv],
                      ra ? mesh_.idx(rc, j) : mesh_.idx(lc, j));
      }
    }

  for (int fj = 0; fj <= ny; ++fj)
    for (int i = 0; i < nx; ++i) {
      int bcell = fj - 1, tcell = fj;
      bool bwrap = false, twrap = false;
      if (bcell < 0 && mesh_.bc_south.kind == BCKind::periodic) {
        bcell = ny - 1;
        bwrap = true;
      }
      if (tcell >= ny && mesh_.bc_north.kind == BCKind::periodic) {
        tcell = 0;
        twrap = true;
      }
      bool ba = bcell >= 0 && bcell < ny && mesh_.active[mesh_.idx(i, bcell)];
      bool ta = tcell >= 0 && tcell < ny && mesh_.active[mesh_.idx(i, tcell)];
      if (!ba && !ta) continue;
      double* fy = &ws->hflux[(static_cast<size_t>(fj) * nx + i) * nq * nv];
      double yf = mesh_.y0 + fj * hy;
      const BoundaryTag* bc = nullptr;
      double normal[2] = {0, 0};
      if (!ba || !ta) {
        bool outer_s = (fj == 0 && !bwrap), outer_n = (fj == ny && !twrap);
        bc = outer_s ? &mesh_.bc_south
                     : outer_n ? &mesh_.bc_north : &mesh_.mask_wall;
        normal[1] = ba ? 1.0 : -1.0;
      }
      double a_b = ba ? ws->wspeed[2 * mesh_.idx(i, bcell) + 1] : 0.0;
      double a_t = ta ? ws->wspeed[2 * mesh_.idx(i, tcell) + 1] : 0.0;
      if (!ba || !ta) {
        int ic = ba ? mesh_.idx(i, bcell) : mesh_.idx(i, tcell);
        double gs =
            ghost_speed(*bc, mesh_.cell_x(i), yf, u.cell_ptr(ic), normal, 1);
        (ba ? a_t : a_b) = gs;
      }
      const double alpha = std::max(a_b, a_t);
      for (int pt = 0; pt < nq; ++pt) {
        double sb[NV], st[NV];
        if (ba) eval_side(side_ptr(mesh_.idx(i, bcell), 3), pt, sb);
        if (ta) eval_side(side_ptr(mesh_.idx(i, tcell), 2), pt, st);
        if (!ba || !ta) {
          double x = mesh_.x0 + i * hx + 0.5 * hx * (basis_.nodes[pt] + 1.0);
          if (ba)
            ghost_state(*bc, x, yf, t, sb, normal, nv, st);
          else
            ghost_state(*bc, x, yf, t, st, normal, nv, sb);
        }
        eq_.llf_alpha(sb, st, 1, alpha, &fy[pt * nv],
                      ta ? mesh_.idx(i, tcell) : mesh_.idx(i, bcell));
      }
    }

  // Pass 3: volume quadrature and assembly, sum-factorized per cell.
  const double* w = basis_.weights.data();
  for (int cj = 0; cj < ny; ++cj)
    for (int ci = 0; ci < nx; ++ci) {
      int cell = mesh_.idx(ci, cj);
      double* r = out.cell_ptr(cell);
      if (!mesh_.active[cell]) {
        std::memset(r, 0, sizeof(double) * nm * nv);
        continue;
      }
      const double* c = u.cell_ptr(cell);
      double L[KP][KP][NV];
      std::memset(L, 0, sizeof(L));
      for (int m = 0; m < nm; ++m) {
        auto [p, q] = modes_[m];
        for (int v = 0; v < nv; ++v) L[p][q][v] = c[m * nv + v];
      }
      double txq[NQ][KP][NV];
      for (int a = 0; a < nq; ++a)
        for (int q = 0; q <= k_; ++q)
          for (int v = 0; v < nv; ++v) {
            double acc = 0.0;
            for (int p = 0; p <= k_; ++p)
              acc += L[p][q][v] * basis_.value(p, a);
            txq[a][q][v] = acc;
          }
      double Fx[NQ][NQ][NV], Fy[NQ][NQ][NV];
      for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b) {
          double st[NV];
          for (int v = 0; v < nv; ++v) {
            double acc = 0.0;
            for (int q = 0; q <= k_; ++q)
              acc += txq[a][q][v] * basis_.value(q, b);
            st[v] = acc;
          }
          eq_.flux(st, 0, Fx[a][b], cell);
          eq_.flux(st, 1, Fy[a][b], cell);
        }
      double Gx[NQ][KP][NV], Gy[NQ][KP][NV];
      for (int a = 0; a < nq; ++a)
        for (int q = 0; q <= k_; ++q)
          for (int v = 0; v < nv; ++v) {
            double ax = 0.0, ay = 0.0;
            for (int b = 0; b < nq; ++b) {
              ax += w[b] * basis_.value(q, b) * Fx[a][b][v];
              ay += w[b] * basis_.deriv(q, b) * Fy[a][b][v];
            }
            Gx[a][q][v] = ax;
            Gy[a][q][v] = ay;
          }
      const double* fE =
          &ws->vflux[(static_cast<size_t>(cj) * (nx + 1) + ci + 1) * nq * nv];
      const double* fW =
          &ws->vflux[(static_cast<size_t>(cj) * (nx + 1) + ci) * nq * nv];
      const double* fN =
          &ws->hflux[(static_cast<size_t>(cj + 1) * nx + ci) * nq * nv];
      const double* fS =
          &ws->hflux[(static_cast<size_t>(cj) * nx + ci) * nq * nv];
      double SE[KP][NV], SW[KP][NV], TN[KP][NV], TS[KP][NV];
      for (int l = 0; l <= k_; ++l)
        for (int v = 0; v < nv; ++v) {
          double se = 0, sw = 0, tn = 0, ts = 0;
          for (int pt = 0; pt < nq; ++pt) {
            double wl = w[pt] * basis_.value(l, pt);
            se += wl * fE[pt * nv + v];
            sw += wl * fW[pt * nv + v];
            tn += wl * fN[pt * nv + v];
            ts += wl * fS[pt * nv + v];
          }
          SE[l][v] = se;
          SW[l][v] = sw;
          TN[l][v] = tn;
          TS[l][v] = ts;
        }
      for (int m = 0; m < nm; ++m) {
        auto [p, q] = modes_[m];
        double sp = (p % 2 == 0) ? 1.0 : -1.0;
        double sq = (q % 2 == 0) ? 1.0 : -1.0;
        double scale = (2 * p + 1) * (2 * q + 1) / (hx * hy);
        for (int v = 0; v < nv; ++v) {
          double vol = 0.0;
          for (int a = 0; a < nq; ++a)
            vol += w[a] * (0.5 * hy * basis_.deriv(p, a) * Gx[a][q][v] +
                           0.5 * hx * basis_.value(p, a) * Gy[a][q][v]);
          double surf = 0.5 * hy * (SE[q][v] - sp * SW[q][v]) +
                        0.5 * hx * (TN[p][v] - sq * TS[p][v]);
          r[m * nv + v] = (vol - surf) * scale;
        }
      }
    }
  out.time = u.time;
}

double DGOperator2D::max_dt(const ModalField& u, double cfl) const {
  double s = 0.0;
  for (int cell = 0; cell < mesh_.nx * mesh_.ny; ++cell) {
    if (!mesh_.active[cell]) continue;
    const double* avg = u.cell_ptr(cell);
    double w = eq_.max_wave_speed(avg, 0, cell) / mesh_.hx +
               eq_.max_wave_speed(avg, 1, cell) / mesh_.hy;
    if (std::isnan(w)) return w;  // blown-up field: let the caller diagnose
    s = std::max(s, w);
  }
  // Prescribed boundary data can move faster than anything in the interior
  // yet (an impulsively started inflow), so ghost states join the bound.
  auto boundary_speed = [&](const BoundaryTag& bc, double x, double y,
                            const double* interior, double nx, double ny) {
    if (bc.kind != BCKind::inflow && bc.kind != BCKind::dirichlet_fn) return;
    State g{};
    const double normal[2] = {nx, ny};
    ghost_state(bc, x, y, u.time, interior, normal, eq_.n_vars, g.data());
    s = std::max(s, eq_.max_wave_speed(g.data(), 0) / mesh_.hx +
                        eq_.max_wave_speed(g.data(), 1) / mesh_.hy);
  };
  for (int j = 0; j < mesh_.ny; ++j) {
    if (mesh_.is_active(0, j))
      boundary_speed(mesh_.bc_west, mesh_.x0, mesh_.cell_y(j),
                     u.cell_ptr(mesh_.idx(0, j)), -1.0, 0.0);
    if (mesh_.is_active(mesh_.nx - 1, j))
      boundary_speed(mesh_.bc_east, mesh_.x1, mesh_.cell_y(j),
                     u.cell_ptr(mesh_.idx(mesh_.nx - 1, j)), 1.0, 0.0);
  }
  for (int i = 0; i < mesh_.nx; ++i) {
    if (mesh_.is_active(i, 0))
      boundary_speed(mesh_.bc_south, mesh_.cell_x(i), mesh_.y0,
                     u.cell_ptr(mesh_.idx(i, 0)), 0.0, -1.0);
    if (mesh_.is_active(i, mesh_.ny - 1))
      boundary_speed(mesh_.bc_north, mesh_.cell_x(i), mesh_.y1,
                     u.cell_ptr(mesh_.idx(i, mesh_.ny - 1)), 0.0, 1.0);
  }
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl / s;
}

std::array<double, 2> DGOperator2D::error_norms(
    const ModalField& u,
    const std::function<void(double, double, double*)>& exact,
    int var) const {
  const int nv = eq_.n_vars, nq = basis_.n_quad;
  double l2 = 0.0, linf = 0.0;
  std::vector<double> vals(static_cast<size_t>(nq) * nq * nv);
  for (int cj = 0; cj < mesh_.ny; ++cj)
    for (int ci = 0; ci < mesh_.nx; ++ci) {
      int cell = mesh_.idx(ci, cj);
      if (!mesh_.active[cell]) continue;
      eval_cell(u, cell, vals.data());
      for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b) {
          double x = mesh_.x0 + ci * mesh_.hx +
                     0.5 * mesh_.hx * (basis_.nodes[a] + 1.0);
          double y = mesh_.y0 + cj * mesh_.hy +
                     0.5 * mesh_.hy * (basis_.nodes[b] + 1.0);
          double st[NV] = {0, 0, 0, 0};
          exact(x, y, st);
          double d = vals[(a * nq + b) * nv + var] - st[var];
          l2 += 0.25 * mesh_.hx * mesh_.hy * basis_.weights[a] *
                basis_.weights[b] * d * d;
          linf = std::max(linf, std::abs(d));
        }
    }
  return {std::sqrt(l2), linf};
}

State DGOperator2D::total_integral(const ModalField& u) const {
  State s{};
  for (int cell = 0; cell < mesh_.nx * mesh_.ny; ++cell) {
    if (!mesh_.active[cell]) continue;
    for (int v = 0; v < eq_.n_vars; ++v)
      s[v] += mesh_.hx * mesh_.hy * u.cell_average(cell, v);
  }
  return s;
}

}  // namespace jumpdg

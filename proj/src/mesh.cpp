#include "jumpdg/mesh.hpp"

#include <cmath>
#include <queue>

namespace jumpdg {

void ghost_state(const BoundaryTag& bc, double x, double y, double t,
                 const double* interior, const double* normal, int n_vars,
                 double* out) {
  switch (bc.kind) {
    case BCKind::periodic:
      throw ConfigError("periodic boundary must be resolved by index wrap");
    case BCKind::reflective: {
      for (int v = 0; v < n_vars; ++v) out[v] = interior[v];
      if (n_vars >= 3) {
        // Mirror the momentum component along the face normal.
        double mn = interior[1] * normal[0] +
                    (n_vars == 4 ? interior[2] * normal[1] : 0.0);
        out[1] -= 2.0 * mn * normal[0];
        if (n_vars == 4) out[2] -= 2.0 * mn * normal[1];
      } else {
        out[0] = interior[0];
      }
      return;
    }
    case BCKind::inflow:
      for (int v = 0; v < n_vars; ++v) out[v] = bc.state[v];
      return;
    case BCKind::outflow:
      for (int v = 0; v < n_vars; ++v) out[v] = interior[v];
      return;
    case BCKind::dirichlet_fn:
      bc.fn(x, y, t, interior, normal, out);
      return;
  }
}

Mesh1D Mesh1D::uniform(double a, double b, int n, BoundaryTag left,
                       BoundaryTag right) {
  if (n < 1 || !(b > a)) throw ConfigError("mesh1d: need n >= 1 and b > a");
  if ((left.kind == BCKind::periodic) != (right.kind == BCKind::periodic))
    throw ConfigError("mesh1d: periodic boundaries must come in pairs");
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.n_cells = n;
  m.h = (b - a) / n;
  m.bc_left = left;
  m.bc_right = right;
  return m;
}

Mesh2D Mesh2D::uniform(double x0, double x1, double y0, double y1, int nx,
                       int ny, BoundaryTag w, BoundaryTag e, BoundaryTag s,
                       BoundaryTag n) {
  if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0))
    throw ConfigError("mesh2d: degenerate extent");
  Mesh2D m;
  m.x0 = x0;
  m.x1 = x1;
  m.y0 = y0;
  m.y1 = y1;
  m.nx = nx;
  m.ny = ny;
  m.hx = (x1 - x0) / nx;
  m.hy = (y1 - y0) / ny;
  m.active.assign(static_cast<size_t>(nx) * ny, 1);
  m.bc_west = w;
  m.bc_east = e;
  m.bc_south = s;
  m.bc_north = n;
  if ((w.kind == BCKind::periodic) != (e.kind == BCKind::periodic) ||
      (s.kind == BCKind::periodic) != (n.kind == BCKind::periodic))
    throw ConfigError("mesh2d: periodic boundaries must come in pairs");
  return m;
}

int Mesh2D::n_active() const {
  int n = 0;
  for (auto a : active) n += a;
  return n;
}

void Mesh2D::deactivate_box(double xa, double xb, double ya, double yb) {
  auto snap = [](double frac, const char* what) {
    double r = std::round(frac);
    if (std::abs(frac - r) > 1e-9 * std::max(1.0, std::abs(frac)))
      throw ConfigError(std::string("mask box edge not aligned with mesh (") +
                        what + ")");
    return static_cast<int>(r);
  };
  int ia = snap((xa - x0) / hx, "x low"), ib = snap((xb - x0) / hx, "x high");
  int ja = snap((ya - y0) / hy, "y low"), jb = snap((yb - y0) / hy, "y high");
  ia = std::max(ia, 0);
  ja = std::max(ja, 0);
  ib = std::min(ib, nx);
  jb = std::min(jb, ny);
  for (int j = ja; j < jb; ++j)
    for (int i = ia; i < ib; ++i) active[idx(i, j)] = 0;
}

void Mesh2D::validate() const {
  int total = n_active();
  if (total == 0) throw ConfigError("mesh2d: no active cells");
  // Flood fill from the first active cell; the active region must be
  // connected through faces so the flux assembly reaches every cell.
  std::vector<std::uint8_t> seen(active.size(), 0);
  std::queue<std::pair<int, int>> q;
  for (int j = 0; j < ny && q.empty(); ++j)
    for (int i = 0; i < nx && q.empty(); ++i)
      if (active[idx(i, j)]) {
        q.push({i, j});
        seen[idx(i, j)] = 1;
      }
  int reached = 0;
  bool wrap_x = bc_west.kind == BCKind::periodic;
  bool wrap_y = bc_south.kind == BCKind::periodic;
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    ++reached;
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      int ii = i + di[d], jj = j + dj[d];
      if (wrap_x) ii = (ii + nx) % nx;
      if (wrap_y) jj = (jj + ny) % ny;
      if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
      if (!active[idx(ii, jj)] || seen[idx(ii, jj)]) continue;
      seen[idx(ii, jj)] = 1;
      q.push({ii, jj});
    }
  }
  if (reached != total)
    throw ConfigError("mesh2d: active region is not connected");
}

}  // namespace jumpdg

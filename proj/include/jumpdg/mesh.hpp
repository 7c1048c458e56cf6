#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "jumpdg/equations.hpp"
#include "jumpdg/util.hpp"

namespace jumpdg {

enum class BCKind { periodic, reflective, inflow, outflow, dirichlet_fn };

/// Boundary condition attached to one side of the domain. dirichlet_fn
/// receives the face-point position, time, interior trace and outward
/// normal, and fills the exterior (ghost) state; this covers mixed and
/// time-dependent boundaries.
struct BoundaryTag {
  BCKind kind = BCKind::periodic;
  State state{};  // inflow data
  std::function<void(double x, double y, double t, const double* interior,
                     const double* normal, double* ghost)>
      fn;

  static BoundaryTag periodic() { return {}; }
  static BoundaryTag reflective() { return {BCKind::reflective, {}, {}}; }
  static BoundaryTag outflow() { return {BCKind::outflow, {}, {}}; }
  static BoundaryTag inflow(const State& s) {
    return {BCKind::inflow, s, {}};
  }
  template <class F>
  static BoundaryTag dirichlet(F&& f) {
    BoundaryTag t;
    t.kind = BCKind::dirichlet_fn;
    t.fn = std::forward<F>(f);
    return t;
  }
};

/// Exterior trace value for a boundary face. `normal` is the outward unit
/// normal (axis aligned), `interior` the trace of the interior polynomial at
/// the face point. Periodic tags are resolved by index wrap-around before
/// this is called.
void ghost_state(const BoundaryTag& bc, double x, double y, double t,
                 const double* interior, const double* normal, int n_vars,
                 double* out);

/// Uniform 1D mesh on [a, b].
struct Mesh1D {
  double a = 0.0, b = 1.0;
  int n_cells = 0;
  double h = 0.0;
  BoundaryTag bc_left, bc_right;

  static Mesh1D uniform(double a, double b, int n, BoundaryTag left,
                        BoundaryTag right);

  double cell_left(int j) const { return a + j * h; }
  double cell_center(int j) const { return a + (j + 0.5) * h; }
};

/// Uniform Cartesian 2D mesh with an optional cell mask for L-shaped and
/// stepped domains. Sides are indexed west, east, south, north. Faces
/// between an active and an inactive cell behave like the `mask_wall` tag
/// (reflective by default).
struct Mesh2D {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;
  std::vector<std::uint8_t> active;
  BoundaryTag bc_west, bc_east, bc_south, bc_north;
  BoundaryTag mask_wall = BoundaryTag::reflective();

  static Mesh2D uniform(double x0, double x1, double y0, double y1, int nx,
                        int ny, BoundaryTag w, BoundaryTag e, BoundaryTag s,
                        BoundaryTag n);

  int idx(int i, int j) const { return j * nx + i; }
  bool is_active(int i, int j) const {
    return i >= 0 && i < nx && j >= 0 && j < ny && active[idx(i, j)];
  }
  double cell_x(int i) const { return x0 + (i + 0.5) * hx; }
  double cell_y(int j) const { return y0 + (j + 0.5) * hy; }
  int n_active() const;

  /// Deactivates all cells inside the axis-aligned box. The box edges must
  /// coincide with mesh lines (the mask is cell-aligned by construction).
  void deactivate_box(double xa, double xb, double ya, double yb);

  /// Checks periodic pairing and that the active region is face-connected.
  void validate() const;
};

}  // namespace jumpdg

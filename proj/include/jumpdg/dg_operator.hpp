#pragma once

#include <array>
#include <functional>
#include <vector>

#include "jumpdg/basis.hpp"
#include "jumpdg/equations.hpp"
#include "jumpdg/field.hpp"
#include "jumpdg/mesh.hpp"

namespace jumpdg {

/// Reusable scratch for residual evaluation; the time loop owns one so RK
/// stages allocate nothing after warm-up. A default-constructed workspace is
/// grown on first use.
struct Workspace {
  std::vector<double> vflux, hflux;  // face fluxes ([face][point][var] in 2D)
  std::vector<double> side;          // per-cell face coefficient cache (2D)
  std::vector<double> wspeed;        // cell-average wave speeds for LLF
};

/// Semi-discrete DG operator on a uniform 1D mesh: modal Legendre basis,
/// Gauss quadrature volume terms, local Lax-Friedrichs interface fluxes and
/// the diagonal mass inverse. The jump filter is applied as a separate
/// split step and never enters this residual.
class DGOperator1D {
 public:
  DGOperator1D(const Mesh1D& mesh, const Equation& eq, int k);

  const Mesh1D& mesh() const { return mesh_; }
  const Equation& equation() const { return eq_; }
  const LegendreBasis& basis() const { return basis_; }
  int degree() const { return k_; }
  int n_modes() const { return k_ + 1; }

  ModalField make_field() const {
    return ModalField(mesh_.n_cells, k_ + 1, eq_.n_vars, k_);
  }

  /// Projects pointwise initial data f(x, state_out) onto the field.
  void project(const std::function<void(double, double*)>& f, ModalField& u,
               int subdiv = 4) const;

  /// d/dt c = residual(u); `out` must be field-shaped.
  void residual(const ModalField& u, double t, ModalField& out,
                Workspace* ws = nullptr) const;

  /// Interior trace values at a cell face (side 0 = left, 1 = right).
  void trace(const ModalField& u, int cell, int side, double* out) const;

  /// Physical derivative traces (d/dx)^m u, m = 0..k, of one variable at a
  /// cell face: out[m]. Chain rule factors (2/h)^m included.
  void trace_derivatives(const ModalField& u, int cell, int side, int var,
                         double* out) const;

  /// Exterior trace at a cell's face: the periodic neighbour's interior
  /// trace, or the boundary ghost state.
  void exterior_trace(const ModalField& u, int cell, int side, double t,
                      double* out) const;

  /// Solution values at the quadrature nodes of a cell: out[q*n_vars + v].
  void eval_cell(const ModalField& u, int cell, double* out) const;

  /// Largest stable time step for the given CFL number.
  double max_dt(const ModalField& u, double cfl) const;

  /// {L2, Linf} error of variable `var` against pointwise reference data.
  std::array<double, 2> error_norms(
      const ModalField& u, const std::function<void(double, double*)>& exact,
      int var) const;

  /// Domain integral of every conserved variable.
  State total_integral(const ModalField& u) const;

 private:
  Mesh1D mesh_;
  Equation eq_;
  int k_;
  LegendreBasis basis_;
};

/// 2D counterpart on a masked Cartesian mesh with tensor-product modes of
/// total degree <= k. Faces between active and inactive cells behave like
/// walls; inactive cells carry zero coefficients and zero residual.
class DGOperator2D {
 public:
  DGOperator2D(const Mesh2D& mesh, const Equation& eq, int k);

  const Mesh2D& mesh() const { return mesh_; }
  const Equation& equation() const { return eq_; }
  const LegendreBasis& basis() const { return basis_; }
  int degree() const { return k_; }
  int n_modes() const { return static_cast<int>(modes_.size()); }
  const std::vector<ModeIndex2D>& modes() const { return modes_; }

  ModalField make_field() const {
    return ModalField(mesh_.nx * mesh_.ny, n_modes(), eq_.n_vars, k_);
  }

  void project(const std::function<void(double, double, double*)>& f,
               ModalField& u, int subdiv = 3) const;

  void residual(const ModalField& u, double t, ModalField& out,
                Workspace* ws = nullptr) const;

  /// Solution values at the tensor quadrature nodes: out[(a*nq + b)*nv + v]
  /// where a indexes x and b indexes y.
  void eval_cell(const ModalField& u, int cell, double* out) const;

  /// Value of one variable at a reference point (slow probe for tests).
  double eval_at(const ModalField& u, int cell, double xi, double eta,
                 int var) const;

  /// Physical mixed-derivative trace d^(a+b) u / dx^a dy^b of one variable
  /// at reference position (xi, eta) of a cell (slow probe for tests).
  double deriv_at(const ModalField& u, int cell, int a, int b, double xi,
                  double eta, int var) const;

  /// Interior trace of all variables along one face (face: 0 = west,
  /// 1 = east, 2 = south, 3 = north) at the edge quadrature nodes:
  /// out[point*n_vars + v].
  void edge_trace(const ModalField& u, int cell, int face, double* out) const;

  /// Derivative traces at the three jump sample points of a face:
  /// out[((a*(k+1) + b)*3 + tp)*n_vars + v] holds d^(a,b) u at sample tp.
  /// Only entries with a+b <= k are written.
  void edge_deriv_traces(const ModalField& u, int cell, int face,
                         double* out) const;

  double max_dt(const ModalField& u, double cfl) const;

  std::array<double, 2> error_norms(
      const ModalField& u,
      const std::function<void(double, double, double*)>& exact,
      int var) const;

  State total_integral(const ModalField& u) const;

  /// Face-neighbour cell index or -1 when the face is a boundary/wall; used
  /// by the filter and limiter passes.
  int neighbor(int cell, int face) const;
  const BoundaryTag& boundary_tag(int cell, int face) const;

 private:
  Mesh2D mesh_;
  Equation eq_;
  int k_;
  LegendreBasis basis_;
  std::vector<ModeIndex2D> modes_;
  // endpoint derivative tables: endd_[(m*(k+1)+l)*2 + side]
  std::vector<double> endd_;
  // P_l^(m) at the jump sample points -1, 0, 1: tp_[(m*(k+1)+l)*3 + t]
  std::vector<double> tp_;

  friend struct Filter2DAccess;
};

}  // namespace jumpdg

#pragma once

#include <vector>

#include "jumpdg/dg_operator.hpp"

namespace jumpdg {

/// Controls for the interface-jump filter. The filter damps each modal
/// coefficient by exp(-sigma * dt) in a split step after every stage; the
/// damping coefficient is assembled from the interface jumps of the solution
/// and of its derivative traces, so it vanishes at machine precision where
/// the solution is smooth and grows to O(1/h) strength at shocks.
struct FilterParams {
  bool enabled = true;

  /// modewise: level l damping uses jumps of derivatives up to order l.
  /// full: one cell coefficient (the top level's) drives every mode.
  enum class Mode { modewise, full };
  Mode mode = Mode::modewise;

  /// Coefficient policy. The scalar default scales by the local wave speed;
  /// the Euler policies add the inverse specific enthalpy; custom uses fixed
  /// user constants (c_x only in 1D).
  enum class Policy { scalar_default, euler_1d, euler_2d, custom };
  Policy policy = Policy::scalar_default;
  double c_custom_x = 0.0, c_custom_y = 0.0;

  /// Filter time-step convention inside SSP-RK3: the full step dt after
  /// every stage (default), or dt scaled by each stage's effective weight.
  enum class DtMode { full, stage_weighted };
  DtMode dt_mode = DtMode::full;
};

/// Policy matching the equation and dimension.
FilterParams::Policy default_policy(const Equation& eq);

/// Per-cell interface jump norms of the solution and its derivative traces,
/// accumulated over the cell's faces. Entry (cell, m, var) holds, in 1D,
///   |[d^m u]| at the left face + |[d^m u]| at the right face,
/// and in 2D the edge-length-normalized integral of the absolute jump over
/// the two vertical faces (block jv) resp. horizontal faces (block jh),
/// summed over all mixed derivatives of total order m.
struct JumpData {
  int n_cells = 0, n_levels = 0, n_vars = 0;
  bool two_dim = false;
  std::vector<double> jv, jh;

  double v(int cell, int m, int var) const {
    return jv[(static_cast<size_t>(cell) * n_levels + m) * n_vars + var];
  }
  double h(int cell, int m, int var) const {
    return jh[(static_cast<size_t>(cell) * n_levels + m) * n_vars + var];
  }
};

JumpData compute_jump_data(const DGOperator1D& op, const ModalField& u,
                           double t);
JumpData compute_jump_data(const DGOperator2D& op, const ModalField& u,
                           double t);

/// Fills rates[mode] with the damping rate of every mode of one cell (rate 0
/// for the average) and returns the cell's top-level damping coefficient
/// (the shock-indicator diagnostic). For systems the coefficient is
/// maximized over components before the mode scaling.
double damping_rates(const DGOperator1D& op, const JumpData& jd,
                     const ModalField& u, int cell, const FilterParams& fp,
                     double* rates);
double damping_rates(const DGOperator2D& op, const JumpData& jd,
                     const ModalField& u, int cell, const FilterParams& fp,
                     double* rates);

/// Applies the exponential damping in place. Cell averages are never
/// touched, zero-jump cells are left bit-identical, and |coefficients| never
/// grow. sigma_top, when given, receives the per-cell diagnostic.
void apply_filter(const DGOperator1D& op, ModalField& u, double dt,
                  const FilterParams& fp, double t,
                  std::vector<double>* sigma_top = nullptr);
void apply_filter(const DGOperator2D& op, ModalField& u, double dt,
                  const FilterParams& fp, double t,
                  std::vector<double>* sigma_top = nullptr);

}  // namespace jumpdg

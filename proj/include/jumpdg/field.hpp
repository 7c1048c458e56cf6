#pragma once

#include <vector>

namespace jumpdg {

/// Modal coefficient storage, laid out c[cell][mode][var] contiguously.
/// Mode 0 carries the cell average for every variable (the basis is the
/// unnormalized Legendre family, P_0 = 1).
struct ModalField {
  int n_cells = 0, n_modes = 0, n_vars = 0, k = 0;
  double time = 0.0;
  std::vector<double> c;

  ModalField() = default;
  ModalField(int cells, int modes, int vars, int degree)
      : n_cells(cells), n_modes(modes), n_vars(vars), k(degree),
        c(static_cast<size_t>(cells) * modes * vars, 0.0) {}

  size_t idx(int cell, int mode, int var) const {
    return (static_cast<size_t>(cell) * n_modes + mode) * n_vars + var;
  }
  double& at(int cell, int mode, int var) { return c[idx(cell, mode, var)]; }
  double at(int cell, int mode, int var) const {
    return c[idx(cell, mode, var)];
  }
  const double* cell_ptr(int cell) const {
    return c.data() + static_cast<size_t>(cell) * n_modes * n_vars;
  }
  double* cell_ptr(int cell) {
    return c.data() + static_cast<size_t>(cell) * n_modes * n_vars;
  }
  double cell_average(int cell, int var) const { return at(cell, 0, var); }
};

}  // namespace jumpdg

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jumpdg/dg_operator.hpp"
#include "jumpdg/jump_filter.hpp"

namespace jumpdg {

/// Outcome of one positivity-limiter sweep. Minima are taken over the
/// limiter's test points (volume quadrature nodes plus all face flux
/// points) after any scaling was applied.
struct PPStats {
  double min_rho = 0.0, min_p = 0.0;
  int n_rho_limited = 0, n_p_limited = 0;
};

/// Scales Euler polynomials toward their cell average until density and
/// pressure are admissible at every test point: first the density modes
/// alone, then all higher modes for pressure (the standard conservative
/// two-stage scaling). The pressure floor is eps; the density floor is
/// max(eps, 0.1 * cell average), because a density point lifted only to eps
/// under O(1) pressure carries an m/rho velocity that blows up the next flux
/// evaluation. Cell averages are untouched; a cell whose average itself is
/// inadmissible raises AdmissibilityError. Cells that already satisfy the
/// bounds are left bit-identical, so the limiter is idempotent. For scalar
/// equations this is a no-op.
PPStats pp_limiter(const DGOperator1D& op, ModalField& u, double eps = 1e-13);
PPStats pp_limiter(const DGOperator2D& op, ModalField& u, double eps = 1e-13);

/// {min density, min pressure} over the limiter test points, no mutation.
std::array<double, 2> admissibility_scan(const DGOperator1D& op,
                                         const ModalField& u);
std::array<double, 2> admissibility_scan(const DGOperator2D& op,
                                         const ModalField& u);

/// Replaces a cell's polynomial by its average wherever density or pressure
/// dips below frac times the cell mean at some test point. Meant for freshly
/// projected discontinuous data: the L2 best fit of a mid-cell jump rings so
/// hard that even the scaled-back polynomial keeps a near-vacuum trace value
/// under O(1) pressure, and the m/rho velocity there blows up the first
/// energy fluxes. Returns the number of cells flattened. Conservative,
/// idempotent, and a no-op for scalar equations or resolved data.
int flatten_undershoots(const DGOperator1D& op, ModalField& u,
                        double frac = 0.1);
int flatten_undershoots(const DGOperator2D& op, ModalField& u,
                        double frac = 0.1);

/// Hybrid strategy: a cheap jump indicator flags troubled cells, which are
/// blended toward their jump-filtered version; smooth cells stay untouched
/// (bit-identical). The indicator is the h-scaled total interface jump of
/// the first variable, normalized by the cell average magnitude, so it
/// decays like h^k in smooth regions and grows like 1/h at shocks.
struct HybridParams {
  double threshold = 0.1;
  double floor = 1e-10;
};

void hybrid_limit(const DGOperator1D& op, ModalField& u, double dt,
                  const FilterParams& fp, const HybridParams& hp, double t,
                  std::vector<std::uint8_t>* troubled = nullptr,
                  std::vector<double>* sigma_top = nullptr);
void hybrid_limit(const DGOperator2D& op, ModalField& u, double dt,
                  const FilterParams& fp, const HybridParams& hp, double t,
                  std::vector<std::uint8_t>* troubled = nullptr,
                  std::vector<double>* sigma_top = nullptr);

}  // namespace jumpdg

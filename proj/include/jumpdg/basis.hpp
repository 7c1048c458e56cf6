#pragma once

#include <functional>
#include <vector>

namespace jumpdg {

/// Hard caps baked into the solver kernels (stack-sized scratch arrays).
inline constexpr int kMaxDegree = 4;
inline constexpr int kMaxQuad1D = kMaxDegree + 3;
inline constexpr int kMaxModes2D = (kMaxDegree + 1) * (kMaxDegree + 2) / 2;
inline constexpr int kMaxVars = 4;

/// Legendre polynomial P_l on [-1,1], standard normalization P_l(1) = 1.
double eval_legendre(int l, double xi);

/// m-th derivative of P_l at xi (m = 0 returns the value itself).
double eval_legendre_deriv(int l, int m, double xi);

/// Sturm-Liouville eigenvalue of P_l: l(l+1).
inline int sl_eigenvalue_1d(int l) { return l * (l + 1); }

/// Tensor mode (p,q) eigenvalue: p(p+1) + q(q+1).
inline int sl_eigenvalue_2d(int p, int q) {
  return sl_eigenvalue_1d(p) + sl_eigenvalue_1d(q);
}

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [-1,1], exact through degree 2n-1.
QuadRule gauss_legendre(int n);

/// Degree-2 tensor mode index for total degree p+q <= k orderings.
struct ModeIndex2D {
  int p = 0;
  int q = 0;
};

/// All modes with p+q <= k, ordered by total degree then by p descending
/// inside a level, so mode 0 is (0,0).
std::vector<ModeIndex2D> modes_2d(int k);

inline int n_modes_2d(int k) { return (k + 1) * (k + 2) / 2; }

/// Tabulated Legendre data for one polynomial degree: quadrature nodes plus
/// basis values/derivatives at those nodes and at the cell endpoints.
/// Quadrature size is fixed at k+3 points, enough for degree 2k+5 integrands.
struct LegendreBasis {
  int k = 0;
  int n_quad = 0;
  std::vector<double> nodes, weights;
  std::vector<double> val;   // val[l * n_quad + q] = P_l(x_q)
  std::vector<double> der;   // der[l * n_quad + q] = P_l'(x_q)
  std::vector<double> dval;  // dval[(m*(k+1) + l)*2 + s] = P_l^(m)(s ? +1 : -1)

  explicit LegendreBasis(int degree);

  double value(int l, int q) const { return val[l * n_quad + q]; }
  double deriv(int l, int q) const { return der[l * n_quad + q]; }
  /// P_l^(m) at the cell endpoint (side = 0 left, 1 right).
  double end_deriv(int l, int m, int side) const {
    return dval[(m * (k + 1) + l) * 2 + side];
  }
};

/// L2 projection of f onto P_k on the cell [x_left, x_left + h]; returns the
/// k+1 modal coefficients. The quadrature subdivides the cell into `subdiv`
/// pieces with k+3 Gauss points each; resolving a non-smooth f adequately is
/// the caller's duty.
std::vector<double> l2_project(const std::function<double(double)>& f,
                               double x_left, double h, int k, int subdiv = 1);

}  // namespace jumpdg

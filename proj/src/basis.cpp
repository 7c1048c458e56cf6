#include "jumpdg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpdg {

double eval_legendre(int l, double xi) {
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = xi;
  for (int j = 2; j <= l; ++j) {
    double pj = ((2 * j - 1) * xi * p - (j - 1) * pm1) / j;
    pm1 = p;
    p = pj;
  }
  return p;
}

double eval_legendre_deriv(int l, int m, double xi) {
  if (m == 0) return eval_legendre(l, xi);
  if (m > l) return 0.0;
  // Differentiate the three-term recurrence m times:
  //   j P_j^(i) = (2j-1) (xi P_{j-1}^(i) + i P_{j-1}^(i-1)) - (j-1) P_{j-2}^(i)
  std::vector<double> pm2(m + 1, 0.0), pm1(m + 1, 0.0), p(m + 1, 0.0);
  pm2[0] = 1.0;  // P_0
  if (l == 0) return 0.0;
  pm1[0] = xi;  // P_1
  if (m >= 1) pm1[1] = 1.0;
  if (l == 1) return pm1[m];
  for (int j = 2; j <= l; ++j) {
    for (int i = 0; i <= m; ++i) {
      double lower = (i > 0) ? pm1[i - 1] : 0.0;
      p[i] = ((2 * j - 1) * (xi * pm1[i] + i * lower) - (j - 1) * pm2[i]) / j;
    }
    pm2 = pm1;
    pm1 = p;
  }
  return pm1[m];
}

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-based initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double pn = eval_legendre(n, x);
      double dpn = eval_legendre_deriv(n, 1, x);
      double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double dpn = eval_legendre_deriv(n, 1, x);
    // The Chebyshev guesses sweep from +1 towards -1; store ascending.
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dpn * dpn);
  }
  return r;
}

std::vector<ModeIndex2D> modes_2d(int k) {
  std::vector<ModeIndex2D> m;
  m.reserve(n_modes_2d(k));
  for (int l = 0; l <= k; ++l)
    for (int p = l; p >= 0; --p) m.push_back({p, l - p});
  return m;
}

LegendreBasis::LegendreBasis(int degree) : k(degree), n_quad(degree + 3) {
  QuadRule q = gauss_legendre(n_quad);
  nodes = q.nodes;
  weights = q.weights;
  val.resize((k + 1) * n_quad);
  der.resize((k + 1) * n_quad);
  for (int l = 0; l <= k; ++l)
    for (int i = 0; i < n_quad; ++i) {
      val[l * n_quad + i] = eval_legendre(l, nodes[i]);
      der[l * n_quad + i] = eval_legendre_deriv(l, 1, nodes[i]);
    }
  dval.resize((k + 1) * (k + 1) * 2);
  for (int m = 0; m <= k; ++m)
    for (int l = 0; l <= k; ++l) {
      dval[(m * (k + 1) + l) * 2 + 0] = eval_legendre_deriv(l, m, -1.0);
      dval[(m * (k + 1) + l) * 2 + 1] = eval_legendre_deriv(l, m, 1.0);
    }
}

std::vector<double> l2_project(const std::function<double(double)>& f,
                               double x_left, double h, int k, int subdiv) {
  QuadRule q = gauss_legendre(k + 3);
  std::vector<double> c(k + 1, 0.0);
  double sh = h / subdiv;
  for (int s = 0; s < subdiv; ++s) {
    double a = x_left + s * sh;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      double x = a + 0.5 * sh * (q.nodes[i] + 1.0);
      double xi = 2.0 * (x - x_left) / h - 1.0;  // cell reference coordinate
      double fv = f(x);
      // dx = (sh/2) dxi_sub and the projection wants (2l+1)/2 * int over the
      // cell in its own reference coordinate, i.e. (2l+1)/h * int_x f P_l dx.
      for (int l = 0; l <= k; ++l)
        c[l] += (2 * l + 1) / h * 0.5 * sh * q.weights[i] * fv *
                eval_legendre(l, xi);
    }
  }
  return c;
}

}  // namespace jumpdg

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "jumpdg/jump_filter.hpp"
#include "jumpdg/limiters.hpp"

using namespace jumpdg;

namespace {

constexpr double kEps = 1e-13;

Mesh1D outflow1d(double a, double b, int n) {
  return Mesh1D::uniform(a, b, n, BoundaryTag::outflow(),
                         BoundaryTag::outflow());
}

int mode_index(const DGOperator2D& op, int p, int q) {
  const auto& m = op.modes();
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (m[i].p == p && m[i].q == q) return i;
  return -1;
}

bool bitwise_equal(const ModalField& a, const ModalField& b) {
  return a.c.size() == b.c.size() &&
         std::memcmp(a.c.data(), b.c.data(), a.c.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("positivity limiter leaves admissible fields untouched") {
  auto mesh = outflow1d(0, 1, 4);
  DGOperator1D op(mesh, Equation::euler1d(), 2);
  auto u = op.make_field();
  for (int j = 0; j < 4; ++j) {
    u.at(j, 0, 0) = 2.0;
    u.at(j, 1, 0) = 0.1;
    u.at(j, 0, 1) = 0.2;
    u.at(j, 0, 2) = 5.0;
    u.at(j, 1, 2) = 0.05;
  }
  auto before = u;
  auto st = pp_limiter(op, u, kEps);
  CHECK(bitwise_equal(u, before));
  CHECK(st.n_rho_limited == 0);
  CHECK(st.n_p_limited == 0);
  CHECK(st.min_rho > 1.8);
  CHECK(st.min_p > 0.0);
}

TEST_CASE("density stage scales linear overshoot back to the relative floor") {
  // rho(xi) = 1 + 1.5 xi dips to -0.5 at the left face; momentum zero and a
  // fat uniform energy keep pressure out of the picture. The floor for an
  // O(1) average is 0.1 times the average, not the bare eps.
  auto mesh = outflow1d(0, 1, 1);
  DGOperator1D op(mesh, Equation::euler1d(), 1);
  auto u = op.make_field();
  u.at(0, 0, 0) = 1.0;
  u.at(0, 1, 0) = 1.5;
  u.at(0, 0, 2) = 10.0;

  auto st = pp_limiter(op, u, kEps);
  CHECK(st.n_rho_limited == 1);
  CHECK(st.n_p_limited == 0);
  CHECK(u.at(0, 0, 0) == 1.0);  // average is sacred
  double theta = u.at(0, 1, 0) / 1.5;
  double want = (1.0 - 0.1) / 1.5;
  CHECK(std::abs(theta - want) <= 2e-8);
  CHECK(st.min_rho >= 0.1 * (1.0 - 1e-6));
  CHECK(st.min_rho <= 0.1 * (1.0 + 1e-6));  // pulled exactly to the floor
}

TEST_CASE("density floor falls back to eps for near-vacuum averages") {
  // With rho_bar = 5e-13 the relative floor 0.1 rho_bar drops below eps, so
  // the classical absolute floor takes over: theta = (5e-13 - eps) / 1e-12.
  auto mesh = outflow1d(0, 1, 1);
  DGOperator1D op(mesh, Equation::euler1d(), 1);
  auto u = op.make_field();
  u.at(0, 0, 0) = 5e-13;
  u.at(0, 1, 0) = 1e-12;
  u.at(0, 0, 2) = 10.0;

  auto st = pp_limiter(op, u, kEps);
  CHECK(st.n_rho_limited == 1);
  double theta = u.at(0, 1, 0) / 1e-12;
  double want = (5e-13 - kEps) / 1e-12;
  CHECK(std::abs(theta - want) <= 2e-8);
  CHECK(st.min_rho >= kEps * (1.0 - 1e-6));
}

TEST_CASE("pressure stage rescales all modes together") {
  // rho = 1, m = 3 xi, E = 1: at xi = 1 the kinetic energy exceeds E and the
  // pressure goes negative while the density stays fine
  auto mesh = outflow1d(0, 1, 1);
  DGOperator1D op(mesh, Equation::euler1d(), 1);
  auto u = op.make_field();
  u.at(0, 0, 0) = 1.0;
  u.at(0, 1, 1) = 3.0;
  u.at(0, 0, 2) = 1.0;

  auto st = pp_limiter(op, u, kEps);
  CHECK(st.n_rho_limited == 0);
  CHECK(st.n_p_limited == 1);
  CHECK(u.at(0, 1, 1) < 3.0);
  CHECK(u.at(0, 1, 1) > 0.0);
  CHECK(u.at(0, 0, 1) == 0.0);
  auto mins = admissibility_scan(op, u);
  CHECK(mins[1] >= kEps * (1.0 - 1e-6));
  CHECK(mins[0] == 1.0);  // density modes were all zero and stay zero
}

TEST_CASE("limiting triggered by an edge point alone in 2d") {
  auto mesh = Mesh2D::uniform(0, 1, 0, 1, 2, 2, BoundaryTag::outflow(),
                              BoundaryTag::outflow(), BoundaryTag::outflow(),
                              BoundaryTag::outflow());
  DGOperator2D op(mesh, Equation::euler2d(), 1);
  auto u = op.make_field();
  for (int c = 0; c < 4; ++c) {
    u.at(c, 0, 0) = 1.0;
    u.at(c, 0, 3) = 10.0;
  }
  int m10 = mode_index(op, 1, 0);
  REQUIRE(m10 > 0);
  // volume quadrature never reaches |xi| = 1, so rho = 1 + 1.1 xi is
  // positive at every interior point and negative only on the west edge
  u.at(0, m10, 0) = 1.1;
  auto others_before = u;

  auto st = pp_limiter(op, u, kEps);
  CHECK(st.n_rho_limited == 1);
  CHECK(st.n_p_limited == 0);
  double theta = u.at(0, m10, 0) / 1.1;
  CHECK(std::abs(theta - (1.0 - 0.1) / 1.1) <= 2e-8);
  for (int c = 1; c < 4; ++c)
    for (int m = 0; m < u.n_modes; ++m)
      for (int v = 0; v < 4; ++v)
        CHECK(u.at(c, m, v) == others_before.at(c, m, v));
}

TEST_CASE("limiter is idempotent and conservative under random stress") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unit(0, 1), sym(-1, 1);
  int limited_somewhere = 0;
  for (int trial = 0; trial < 60; ++trial) {
    bool two_dim = trial % 3 == 2;
    if (two_dim) {
      auto mesh = Mesh2D::uniform(
          0, 1, 0, 1, 3, 3, BoundaryTag::outflow(), BoundaryTag::outflow(),
          BoundaryTag::outflow(), BoundaryTag::outflow());
      DGOperator2D op(mesh, Equation::euler2d(), 2);
      auto u = op.make_field();
      for (int c = 0; c < u.n_cells; ++c) {
        State s = euler_state_2d(0.1 + 1.9 * unit(rng), sym(rng), sym(rng),
                                 0.1 + 1.9 * unit(rng));
        for (int v = 0; v < 4; ++v) {
          u.at(c, 0, v) = s[v];
          for (int m = 1; m < u.n_modes; ++m) u.at(c, m, v) = 0.8 * sym(rng);
        }
      }
      auto avg_before = u;
      auto st = pp_limiter(op, u, kEps);
      limited_somewhere += st.n_rho_limited + st.n_p_limited;
      for (int c = 0; c < u.n_cells; ++c)
        for (int v = 0; v < 4; ++v)
          CHECK(u.at(c, 0, v) == avg_before.at(c, 0, v));
      auto mins = admissibility_scan(op, u);
      CHECK(mins[0] >= kEps * (1.0 - 1e-6));
      CHECK(mins[1] >= kEps * (1.0 - 1e-6));
      auto once = u;
      pp_limiter(op, u, kEps);
      CHECK(bitwise_equal(u, once));
    } else {
      auto mesh = outflow1d(0, 1, 6);
      DGOperator1D op(mesh, Equation::euler1d(), 3);
      auto u = op.make_field();
      for (int c = 0; c < u.n_cells; ++c) {
        State s = euler_state_1d(0.1 + 1.9 * unit(rng), sym(rng),
                                 0.1 + 1.9 * unit(rng));
        for (int v = 0; v < 3; ++v) {
          u.at(c, 0, v) = s[v];
          for (int m = 1; m < u.n_modes; ++m) u.at(c, m, v) = 0.8 * sym(rng);
        }
      }
      auto avg_before = u;
      auto st = pp_limiter(op, u, kEps);
      limited_somewhere += st.n_rho_limited + st.n_p_limited;
      for (int c = 0; c < u.n_cells; ++c)
        for (int v = 0; v < 3; ++v)
          CHECK(u.at(c, 0, v) == avg_before.at(c, 0, v));
      auto mins = admissibility_scan(op, u);
      CHECK(mins[0] >= kEps * (1.0 - 1e-6));
      CHECK(mins[1] >= kEps * (1.0 - 1e-6));
      auto once = u;
      pp_limiter(op, u, kEps);
      CHECK(bitwise_equal(u, once));
    }
  }
  CHECK(limited_somewhere > 20);  // the stress test actually stressed
}

TEST_CASE("inadmissible averages are reported, not repaired") {
  auto mesh = outflow1d(0, 1, 4);
  DGOperator1D op(mesh, Equation::euler1d(), 1);
  auto u = op.make_field();
  for (int j = 0; j < 4; ++j) {
    u.at(j, 0, 0) = 1.0;
    u.at(j, 0, 2) = 2.0;
  }
  u.at(2, 0, 0) = -0.5;
  try {
    pp_limiter(op, u, kEps);
    FAIL("expected AdmissibilityError");
  } catch (const AdmissibilityError& e) {
    CHECK(e.cell == 2);
    CHECK(std::string(e.what()).find("cell 2") != std::string::npos);
  }
}

TEST_CASE("scalar equations are a no-op for the positivity limiter") {
  auto mesh = outflow1d(0, 1, 5);
  DGOperator1D op(mesh, Equation::burgers(), 2);
  auto u = op.make_field();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> sym(-3, 3);
  for (auto& c : u.c) c = sym(rng);
  auto before = u;
  auto st = pp_limiter(op, u, kEps);
  CHECK(bitwise_equal(u, before));
  CHECK(st.min_rho == std::numeric_limits<double>::infinity());
  CHECK(st.min_p == std::numeric_limits<double>::infinity());
}

TEST_CASE("hybrid limiter") {
  FilterParams fp;
  fp.policy = FilterParams::Policy::scalar_default;
  HybridParams hp;

  SUBCASE("constant fields are never troubled") {
    auto mesh = Mesh1D::uniform(0, 1, 6, BoundaryTag::periodic(),
                                BoundaryTag::periodic());
    DGOperator1D op(mesh, Equation::advection1d(), 2);
    auto u = op.make_field();
    for (int j = 0; j < 6; ++j) u.at(j, 0, 0) = 4.0;
    auto before = u;
    std::vector<std::uint8_t> troubled;
    hybrid_limit(op, u, 0.1, fp, hp, 0.0, &troubled);
    CHECK(bitwise_equal(u, before));
    for (auto t : troubled) CHECK(t == 0);
  }

  SUBCASE("troubled flags cluster at the discontinuity") {
    auto mesh = Mesh1D::uniform(0, 1, 10, BoundaryTag::periodic(),
                                BoundaryTag::periodic());
    DGOperator1D op(mesh, Equation::advection1d(), 2);
    auto u = op.make_field();
    // averages stay O(1) so the tiny mode spill below cannot trip the
    // indicator of a smooth neighbor
    for (int j = 0; j < 10; ++j) u.at(j, 0, 0) = j < 5 ? 1.0 : 3.0;
    // scatter small smooth content into the high modes of the jump cells so
    // the blend has something to act on
    for (int j : {0, 4, 5, 9}) u.at(j, 2, 0) = 0.01;
    auto before = u;
    std::vector<std::uint8_t> troubled;
    std::vector<double> sigma;
    hybrid_limit(op, u, 0.05, fp, hp, 0.0, &troubled, &sigma);
    for (int j = 0; j < 10; ++j) {
      bool at_jump = j == 0 || j == 4 || j == 5 || j == 9;
      CHECK(troubled[j] == (at_jump ? 1 : 0));
      if (!at_jump) {
        for (int m = 0; m < 3; ++m) CHECK(u.at(j, m, 0) == before.at(j, m, 0));
        CHECK(sigma[j] == 0.0);
      } else {
        CHECK(u.at(j, 0, 0) == before.at(j, 0, 0));
        CHECK(std::abs(u.at(j, 2, 0)) < std::abs(before.at(j, 2, 0)));
        CHECK(sigma[j] > 0.0);
      }
    }
  }

  SUBCASE("threshold zero reduces the blend to the plain filter") {
    auto mesh = Mesh1D::uniform(0, 2 * M_PI, 16, BoundaryTag::periodic(),
                                BoundaryTag::periodic());
    DGOperator1D op(mesh, Equation::burgers(), 2);
    auto u = op.make_field();
    op.project(
        [](double x, double* s) { s[0] = std::sin(x) + (x > 4.0 ? 0.7 : 0.0); },
        u, 16);
    auto jd = compute_jump_data(op, u, 0.0);
    for (int j = 0; j < 16; ++j) REQUIRE(jd.v(j, 0, 0) > 0.0);

    auto u_f = u, u_h = u;
    apply_filter(op, u_f, 0.02, fp, 0.0);
    HybridParams zero;
    zero.threshold = 0.0;
    hybrid_limit(op, u_h, 0.02, fp, zero, 0.0);
    CHECK(bitwise_equal(u_f, u_h));
  }

  SUBCASE("averages survive heavy blending") {
    auto mesh = Mesh1D::uniform(0, 1, 8, BoundaryTag::periodic(),
                                BoundaryTag::periodic());
    DGOperator1D op(mesh, Equation::burgers(), 3);
    auto u = op.make_field();
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> sym(-1, 1);
    for (auto& c : u.c) c = sym(rng);
    auto before = u;
    hybrid_limit(op, u, 5.0, fp, hp, 0.0);
    for (int j = 0; j < 8; ++j) CHECK(u.at(j, 0, 0) == before.at(j, 0, 0));
  }
}

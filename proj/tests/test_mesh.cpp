#include <cmath>

#include "doctest.h"
#include "jumpdg/mesh.hpp"

using namespace jumpdg;

TEST_CASE("1d mesh geometry") {
  auto m = Mesh1D::uniform(-1.0, 1.0, 8, BoundaryTag::outflow(),
                           BoundaryTag::outflow());
  CHECK(m.h == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.cell_left(0) == -1.0);
  CHECK(m.cell_center(7) == doctest::Approx(0.875).epsilon(1e-14));
}

TEST_CASE("1d periodic tags must pair") {
  CHECK_THROWS_AS(Mesh1D::uniform(0.0, 1.0, 4, BoundaryTag::periodic(),
                                  BoundaryTag::outflow()),
                  ConfigError);
  CHECK_NOTHROW(Mesh1D::uniform(0.0, 1.0, 4, BoundaryTag::periodic(),
                                BoundaryTag::periodic()));
}

TEST_CASE("ghost state policies") {
  double interior[4] = {1.0, 2.0, 3.0, 10.0};
  double normal_px[2] = {1.0, 0.0};
  double out[4];

  SUBCASE("reflective flips the normal momentum") {
    ghost_state(BoundaryTag::reflective(), 0, 0, 0, interior, normal_px, 4,
                out);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == -2.0);
    CHECK(out[2] == 3.0);
    CHECK(out[3] == 10.0);

    double normal_py[2] = {0.0, 1.0};
    ghost_state(BoundaryTag::reflective(), 0, 0, 0, interior, normal_py, 4,
                out);
    CHECK(out[1] == 2.0);
    CHECK(out[2] == -3.0);
  }

  SUBCASE("outflow copies") {
    ghost_state(BoundaryTag::outflow(), 0, 0, 0, interior, normal_px, 4, out);
    for (int v = 0; v < 4; ++v) CHECK(out[v] == interior[v]);
  }

  SUBCASE("inflow returns the pinned state") {
    State s = {7.0, 8.0, 9.0, 11.0};
    ghost_state(BoundaryTag::inflow(s), 0, 0, 0, interior, normal_px, 4, out);
    for (int v = 0; v < 4; ++v) CHECK(out[v] == s[v]);
  }

  SUBCASE("dirichlet function sees position, time and interior") {
    auto tag = BoundaryTag::dirichlet([](double x, double y, double t,
                                         const double* in, const double* n,
                                         double* g) {
      g[0] = x + y + t;
      g[1] = in[1];
      g[2] = n[0];
      g[3] = 0.0;
    });
    ghost_state(tag, 2.0, 3.0, 0.5, interior, normal_px, 4, out);
    CHECK(out[0] == 5.5);
    CHECK(out[1] == 2.0);
    CHECK(out[2] == 1.0);
  }

  SUBCASE("periodic tags are never resolved pointwise") {
    CHECK_THROWS(ghost_state(BoundaryTag::periodic(), 0, 0, 0, interior,
                             normal_px, 4, out));
  }
}

TEST_CASE("2d mesh, mask alignment and connectivity") {
  auto m = Mesh2D::uniform(0.0, 2.0, 0.0, 1.0, 8, 4, BoundaryTag::outflow(),
                           BoundaryTag::outflow(), BoundaryTag::outflow(),
                           BoundaryTag::outflow());
  CHECK(m.hx == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.hy == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.idx(3, 2) == 2 * 8 + 3);
  CHECK(m.n_active() == 32);

  SUBCASE("aligned box deactivates the right cells") {
    m.deactivate_box(0.5, 1.0, 0.0, 0.5);
    CHECK(m.n_active() == 32 - 4);
    CHECK(!m.is_active(2, 0));
    CHECK(!m.is_active(3, 1));
    CHECK(m.is_active(2, 2));
    CHECK_NOTHROW(m.validate());
  }

  SUBCASE("misaligned box is rejected") {
    CHECK_THROWS_AS(m.deactivate_box(0.51, 1.0, 0.0, 0.5), ConfigError);
  }

  SUBCASE("disconnecting the domain is rejected") {
    m.deactivate_box(1.0, 1.25, 0.0, 1.0);  // full-height wall
    CHECK_THROWS_AS(m.validate(), ConfigError);
  }

  SUBCASE("unmatched periodic pair is rejected at build") {
    CHECK_THROWS_AS(
        Mesh2D::uniform(0, 1, 0, 1, 4, 4, BoundaryTag::periodic(),
                        BoundaryTag::outflow(), BoundaryTag::outflow(),
                        BoundaryTag::outflow()),
        ConfigError);
  }
}

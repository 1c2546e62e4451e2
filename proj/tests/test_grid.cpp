// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gosafe/grid.hpp"

using gosafe::Axis;
using gosafe::Grid;
using gosafe::GridDomain;
using gosafe::LipschitzConfig;

namespace {

GridDomain simple_domain(Grid params, Grid states, double mu) {
  Eigen::VectorXd lo(states.dims()), hi(states.dims());
  for (int d = 0; d < states.dims(); ++d) {
    lo[d] = states.axis(d).lo;
    hi[d] = states.axis(d).hi;
  }
  return GridDomain(std::move(params), std::move(states), lo, hi, mu);
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("flat and multi index round-trip on every cell") {
  Grid g({{-1.0, 1.0, 3}, {0.0, 2.0, 4}, {5.0, 5.0, 1}});
  REQUIRE(g.size() == 12);
  for (long flat = 0; flat < g.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    CHECK(g.flatten(idx) == flat);
  }
  CHECK(g.dims() == 3);
  CHECK(g.step(0) == doctest::Approx(1.0));
  CHECK(g.coord(1, 3) == doctest::Approx(2.0));
}

TEST_CASE("last axis is fastest") {
  Grid g({{0.0, 1.0, 2}, {0.0, 1.0, 3}});
  CHECK(g.flatten({0, 0}) == 0);
  CHECK(g.flatten({0, 2}) == 2);
  CHECK(g.flatten({1, 0}) == 3);
  CHECK(g.point(4)[0] == doctest::Approx(1.0));
  CHECK(g.point(4)[1] == doctest::Approx(0.5));
}

TEST_CASE("nearest picks the grid point and clamps outside the range") {
  Grid g({{-1.0, 1.0, 3}});
  Eigen::VectorXd v(1);
  v << 0.2;
  CHECK(g.nearest(v) == 1);
  v << -0.8;
  CHECK(g.nearest(v) == 0);
  v << 7.0;
  CHECK(g.nearest(v) == 2);
  v << -7.0;
  CHECK(g.nearest(v) == 0);
}

TEST_CASE("nearest tie goes to the smaller index") {
  Grid g({{-1.0, 1.0, 3}});
  Eigen::VectorXd v(1);
  v << 0.5;
  CHECK(g.nearest(v) == 1);
  v << -0.5;
  CHECK(g.nearest(v) == 0);
}

TEST_CASE("quantize basics on the three-point axis") {
  GridDomain dom = simple_domain(Grid({{0.0, 0.0, 1}}), Grid({{-1.0, 1.0, 3}}), 0.6);
  Eigen::VectorXd v(1);
  v << 0.2;
  CHECK(dom.quantize(v) == 1);
  v << 0.5;
  CHECK(dom.quantize(v) == 1);
}

TEST_CASE("quantize in two dimensions") {
  GridDomain dom = simple_domain(Grid({{0.0, 0.0, 1}}),
                                 Grid({{0.0, 1.0, 2}, {0.0, 1.0, 2}}), 0.8);
  Eigen::VectorXd v(2);
  v << 0.6, 0.4;
  const long id = dom.quantize(v);
  const auto idx = dom.states().unflatten(id);
  CHECK(idx[0] == 1);
  CHECK(idx[1] == 0);
}

TEST_CASE("quantize is the identity on grid points") {
  GridDomain dom = simple_domain(Grid({{0.0, 0.0, 1}}),
                                 Grid({{-1.0, 1.0, 4}, {0.0, 3.0, 3}}), 0.9);
  for (long s = 0; s < dom.num_states(); ++s)
    CHECK(dom.quantize(dom.states().point(s)) == s);
}

TEST_CASE("quantize rejects states far outside the bounds") {
  GridDomain dom = simple_domain(Grid({{0.0, 0.0, 1}}), Grid({{-1.0, 1.0, 3}}), 0.3);
  Eigen::VectorXd v(1);
  v << 1.25;  // within mu of the box: clamps
  CHECK(dom.quantize(v) == 2);
  v << 1.5;  // beyond mu
  CHECK_THROWS_AS(dom.quantize(v), std::domain_error);
}

TEST_CASE("lipschitz_slack frozen values") {
  SUBCASE("same pair still pays the mu term") {
    GridDomain dom = simple_domain(Grid({{0.0, 1.0, 2}}), Grid({{0.0, 1.0, 2}}), 0.05);
    LipschitzConfig cfg{1.0, 3.0, 0.05, 0.0};
    CHECK(dom.lipschitz_slack(cfg, 0, 0) == doctest::Approx(3.0 * 0.05));
  }
  SUBCASE("parameter-only cost") {
    GridDomain dom = simple_domain(Grid({{0.0, 0.5, 2}}), Grid({{0.0, 0.0, 1}}), 0.1);
    LipschitzConfig cfg{2.0, 0.0, 0.05, 0.0};
    CHECK(dom.lipschitz_slack(cfg, 0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("mixed cost") {
    GridDomain dom = simple_domain(Grid({{0.0, 0.1, 2}}), Grid({{0.0, 0.2, 2}}), 0.05);
    LipschitzConfig cfg{1.0, 3.0, 0.05, 0.0};
    // pair 0 = (a0, x0), pair 3 = (a1, x1)
    CHECK(dom.lipschitz_slack(cfg, 0, 3) == doctest::Approx(0.85));
  }
}

TEST_CASE("lipschitz_slack is symmetric and at least the mu floor") {
  GridDomain dom = simple_domain(Grid({{-1.0, 1.0, 5}}), Grid({{0.0, 2.0, 4}}), 0.3);
  LipschitzConfig cfg{1.7, 0.9, 0.05, 0.0};
  for (long p = 0; p < dom.num_pairs(); ++p)
    for (long q = 0; q < dom.num_pairs(); ++q) {
      const double s = dom.lipschitz_slack(cfg, p, q);
      CHECK(s == dom.lipschitz_slack(cfg, q, p));
      CHECK(s >= cfg.L_x * dom.mu() - 1e-15);
    }
}

TEST_CASE("normalize maps axes to the unit box") {
  Grid g({{-2.0, 2.0, 5}, {3.0, 3.0, 1}});
  Eigen::VectorXd v(2);
  v << 0.0, 3.0;
  const Eigen::VectorXd z = g.normalize(v);
  CHECK(z[0] == doctest::Approx(0.5));
  CHECK(z[1] == doctest::Approx(0.0));  // degenerate axis pins to zero
  CHECK(g.normalize(g.point(0))[0] == doctest::Approx(0.0));
  CHECK(g.normalize(g.point(4))[0] == doctest::Approx(1.0));
}

TEST_CASE("pairwise distances match direct norms") {
  Grid g({{0.0, 1.0, 3}, {0.0, 2.0, 2}});
  const Eigen::MatrixXd d = g.pairwise_distances();
  for (long i = 0; i < g.size(); ++i)
    for (long j = 0; j < g.size(); ++j)
      CHECK(d(i, j) == doctest::Approx((g.point(i) - g.point(j)).norm()));
}

TEST_CASE("stencil keeps offsets shorter than two mu") {
  Grid g({{0.0, 4.0, 5}});  // step 1
  SUBCASE("unit neighbors included when mu is over half a step") {
    const auto st = g.stencil(1.2);  // two_mu
    CHECK(st.in_grid[2].size() == 2);
    CHECK(st.touches_outside[0]);
    CHECK(st.touches_outside[4]);
    CHECK(!st.touches_outside[2]);
  }
  SUBCASE("no neighbors when mu is small") {
    const auto st = g.stencil(0.9);
    CHECK(st.in_grid[2].empty());
    CHECK(!st.touches_outside[2]);
    // End points still have no in-grid or outside reach at this radius.
    CHECK(!st.touches_outside[0]);
  }
}

TEST_CASE("stencil skips degenerate axes") {
  Grid g({{0.0, 2.0, 3}, {7.0, 7.0, 1}});
  const auto st = g.stencil(2.5);
  CHECK(st.in_grid[1].size() == 2);  // only the left and right cells
}

TEST_CASE("diagonal offsets obey the continuous length rule") {
  Grid g({{0.0, 2.0, 3}, {0.0, 2.0, 3}});  // steps 1,1; diagonal length 2
  const auto narrow = g.stencil(1.8);
  const auto wide = g.stencil(2.3);
  // Center cell: 4 axis neighbors at radius 1.8, 8 with diagonals at 2.3.
  CHECK(narrow.in_grid[4].size() == 4);
  CHECK(wide.in_grid[4].size() == 8);
}

TEST_CASE("in_bounds follows the state box") {
  GridDomain dom = simple_domain(Grid({{0.0, 0.0, 1}}), Grid({{-1.0, 1.0, 3}}), 0.5);
  Eigen::VectorXd v(1);
  v << 0.9;
  CHECK(dom.in_bounds(v));
  v << 1.1;
  CHECK(!dom.in_bounds(v));
}

}  // TEST_SUITE

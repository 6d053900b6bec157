// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "doctest.h"
#include "odrs/body.hpp"
#include "odrs/lift.hpp"
#include "odrs/rng.hpp"

using namespace odrs;

namespace {

Vector random_lattice_point(const UnaryLattice& lat, RngStream& rng) {
  std::vector<std::size_t> lv(lat.n());
  for (auto& l : lv) l = rng.index(lat.m() + 1);
  return lat.from_levels(lv);
}

// Every level vector of a lattice with (m + 1)^n points.
void for_each_levels(std::size_t n, std::size_t m, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> lv(n, 0);
  while (true) {
    fn(lv);
    std::size_t i = 0;
    while (i < n && lv[i] == m) lv[i++] = 0;
    if (i == n) return;
    ++lv[i];
  }
}

}  // namespace

TEST_CASE("default unary resolution") {
  CHECK(default_unary_resolution(1, 20) == 1);
  CHECK(default_unary_resolution(500, 20) == 3);  // (25)^(1/4) = 2.236
  CHECK(default_unary_resolution(16, 1) == 2);
}

TEST_CASE("snap_to_lattice") {
  const UnaryLattice lat(2, 2);
  CHECK(lat.snap(Vector{0.49, 0.99}) == Vector{0.0, 0.5});
  CHECK(lat.snap(Vector{0.5, 1.0}) == Vector{0.5, 1.0});
  RngStream rng(1);
  const UnaryLattice big(5, 3);
  for (int k = 0; k < 1000; ++k) {
    const Vector c = rng.uniform_cube(5);
    const Vector s = big.snap(c);
    CHECK(big.on_lattice(s));
    CHECK(leq(s, c));
    CHECK(distance(c, s) <= std::sqrt(5.0) / 3.0);
    CHECK(big.snap(s) == s);
  }
}

TEST_CASE("unary lift and unlift") {
  const UnaryLattice lat(2, 2);
  CHECK(lat.lift(Vector{0.5, 1.0}) == Vector{1.0, 0.0, 1.0, 1.0});
  CHECK(lat.unlift(Vector{1.0, 0.0, 1.0, 1.0}) == Vector{0.5, 1.0});
  CHECK_THROWS_AS(lat.unlift(Vector{0.0, 1.0, 1.0, 1.0}), LatticeError);
  CHECK_THROWS_AS(lat.levels(Vector{0.3, 1.0}), LatticeError);

  RngStream rng(2);
  const UnaryLattice l5(3, 5);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = random_lattice_point(l5, rng);
    const Vector y = random_lattice_point(l5, rng);
    CHECK(l5.unlift(l5.lift(x)) == x);
    CHECK(l5.lift(vee(x, y)) == vee(l5.lift(x), l5.lift(y)));
  }
  std::size_t count = 0;
  const UnaryLattice l4(2, 4);
  for_each_levels(2, 4, [&](const std::vector<std::size_t>& lv) {
    const Vector x = l4.from_levels(lv);
    CHECK(l4.unlift(l4.lift(x)) == x);
    CHECK(l4.levels(x) == lv);
    ++count;
  });
  CHECK(count == 25);
}

TEST_CASE("lift_reward") {
  const UnaryLattice lat(2, 2);
  const Vector a{2.0, -4.0};
  const Vector at = lat.lift_reward(a);
  CHECK(at == Vector{1.0, 1.0, -2.0, -2.0});
  const Vector c{0.5, 1.0};
  CHECK(dot(a, c) == -3.0);
  CHECK(dot(at, lat.lift(c)) == -3.0);
  CHECK(lat.lift_reward(Vector{0.0, 0.0}) == Vector(4, 0.0));
}

TEST_CASE("vee identity on codes") {
  const Vector one_c{1.0, 0.0}, z{0.3, 0.7};
  const Vector lhs = vee(one_c, z);
  Vector rhs = z;
  for (std::size_t i = 0; i < 2; ++i) rhs[i] += one_c[i] * (1.0 - z[i]);
  CHECK(lhs == Vector{1.0, 0.7});
  CHECK(rhs == lhs);
}

TEST_CASE("lifted linear maximize") {
  const LiftedBody cube(ConvexBody::hypercube(1), 3);
  CHECK(cube.linear_maximize(Vector{2.0, -1.0, 3.0}) == Vector{1.0, 1.0, 1.0});
  CHECK(cube.linear_maximize(Vector{-1.0, -0.5, -2.0}) == Vector(3, 0.0));
  CHECK(cube.linear_maximize(Vector{2.0, -3.0, 0.5}) == Vector{1.0, 0.0, 0.0});

  const LiftedBody budget(ConvexBody::uniform_budget(2, 0.5), 2);
  CHECK(budget.increments() == 1);
  CHECK(budget.linear_maximize(Vector{5.0, 1.0, 3.0, 9.0}) == Vector{1.0, 0.0, 0.0, 0.0});

  // Against enumeration of every feasible code.
  RngStream rng(3);
  const LiftedBody b3(ConvexBody::uniform_budget(3, 1.5), 3);
  for (int trial = 0; trial < 100; ++trial) {
    Vector w(9);
    for (auto& v : w) v = rng.uniform(-1.0, 1.0);
    double best = -1e300;
    for_each_levels(3, 3, [&](const std::vector<std::size_t>& lv) {
      if (lv[0] + lv[1] + lv[2] > b3.increments()) return;
      best = std::max(best, dot(w, b3.lattice().lift_levels(lv)));
    });
    const Vector got = b3.linear_maximize(w);
    CHECK(b3.contains(got));
    CHECK(dot(w, got) == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK_THROWS(LiftedBody(ConvexBody::sum_band(2, 0.1, 1.0), 2));
}

TEST_CASE("lifted projection") {
  RngStream rng(4);
  const LiftedBody body(ConvexBody::uniform_budget(3, 1.0), 4);
  for (int trial = 0; trial < 40; ++trial) {
    Vector y(body.dimension());
    for (auto& v : y) v = rng.uniform(-0.5, 1.5);
    const Vector p = body.project(y);
    CHECK(body.contains(p));
    CHECK(body.lattice().is_staircase(p, 1e-9));
    CHECK(distance(body.project(p), p) <= 1e-7);
    // Nonexpansive.
    Vector z(body.dimension());
    for (auto& v : z) v = rng.uniform(-0.5, 1.5);
    CHECK(distance(body.project(z), p) <= distance(z, y) + 1e-7);
  }
}

TEST_CASE("caratheodory_round") {
  RngStream rng(5);
  const LiftedBody cube1(ConvexBody::hypercube(1), 1);
  const Vector half{0.5};
  const int draws = 10000;
  int ones = 0;
  for (int k = 0; k < draws; ++k) {
    const auto r = caratheodory_round(cube1, half, 0.05, 16.0, rng);
    CHECK(std::fabs(r.mean[0] - 0.5) <= 0.05);
    ones += static_cast<int>(r.vertices[r.chosen][0]);
  }
  CHECK(std::fabs(ones / static_cast<double>(draws) - 0.5) <= 0.05);

  const LiftedBody body(ConvexBody::hypercube(2), 3);
  const Vector vertex = body.lattice().lift_levels({2, 1});
  const auto r = caratheodory_round(body, vertex, 0.05, 16.0, rng);
  CHECK(r.vertices.size() == 1);
  CHECK(r.gap == 0.0);
  CHECK(body.lattice().lift_levels(r.vertices[0]) == vertex);

  CHECK(1.0 / std::sqrt(400.0) == doctest::Approx(0.05));
  CHECK_THROWS_AS(caratheodory_round(cube1, half, 0.05, 1e-6, rng), RoundingError);
  CHECK_THROWS_AS(caratheodory_round(cube1, Vector{0.5, 0.1}, 0.05, 16.0, rng), DimensionError);
  CHECK_THROWS_AS(caratheodory_round(body, Vector{0.2, 0.6, 0.0, 0.0, 0.0, 0.0}, 0.05, 16.0, rng), LatticeError);
}

TEST_CASE("vee oracle plays") {
  auto body = std::make_shared<const LiftedBody>(ConvexBody::uniform_budget(4, 1.5), 3);
  VeeConfig cfg;
  cfg.m = 3;
  cfg.inner.seed = 12;
  cfg.inner.horizon = 500;
  VeeOracle a(body, cfg), b(body, cfg), zero(body, cfg);
  CHECK(a.play() == Vector(4, 0.0));
  RngStream rng(6);
  for (int t = 0; t < 500; ++t) {
    const Vector& x = a.play();
    CHECK(body->base().contains(x));
    CHECK(body->lattice().on_lattice(x));
    CHECK(b.play() == x);
    const Vector c = rng.uniform_cube(4);
    Vector g(4);
    for (auto& v : g) v = rng.uniform(-1.0, 1.0);
    CHECK(a.feedback(c, g) == doctest::Approx(dot(g, vee(c, x))));
    b.feedback(c, g);
    zero.play();
    zero.feedback(c, Vector(4, 0.0));
    CHECK(body->base().contains(zero.play()));
  }
  CHECK(zero.inner().cumulative_reward() == Vector(12, 0.0));
}

TEST_CASE("vee oracle regret against the lattice optimum") {
  const std::size_t n = 4, horizon = 200;
  const std::size_t m = default_unary_resolution(horizon, n);
  auto body = std::make_shared<const LiftedBody>(ConvexBody::uniform_budget(n, 2.0), m);
  VeeConfig cfg;
  cfg.m = m;
  cfg.epsilon = 1.0 / std::sqrt(static_cast<double>(horizon));
  cfg.inner.strategy = OracleStrategy::kAscent;
  cfg.inner.horizon = horizon;
  cfg.inner.gradient_bound = 2.0;
  cfg.inner.seed = 3;
  VeeOracle oracle(body, cfg);
  RngStream rng(7);
  std::vector<Vector> cs, as;
  double got = 0.0;
  const Vector mu{0.8, -0.3, 0.5, 0.2};
  for (std::size_t t = 0; t < horizon; ++t) {
    oracle.play();
    Vector c = rng.uniform_cube(n), a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = mu[i] + rng.uniform(-0.5, 0.5);
    got += oracle.feedback(c, a);
    cs.push_back(c);
    as.push_back(a);
  }
  double best = -1e300;
  for_each_levels(n, m, [&](const std::vector<std::size_t>& lv) {
    std::size_t s = 0;
    for (auto l : lv) s += l;
    if (s > body->increments()) return;
    const Vector x = body->lattice().from_levels(lv);
    double v = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) v += dot(as[t], vee(cs[t], x));
    best = std::max(best, v);
  });
  const double regret = best - got;
  const double bound = std::pow(static_cast<double>(n * horizon), 0.75) * 2.0;
  MESSAGE("vee regret ", regret, " bound ", bound);
  CHECK(regret <= bound);
}

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
#include <memory>
#include <vector>

#include "doctest.h"
#include "odrs/body.hpp"
#include "odrs/checks.hpp"
#include "odrs/function.hpp"
#include "odrs/instances.hpp"
#include "odrs/lp.hpp"
#include "odrs/rng.hpp"
#include "odrs/vector_ops.hpp"

using namespace odrs;

namespace {

void check_vec(const Vector& got, const Vector& want, double tol = 1e-12) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::fabs(got[i] - want[i]) <= tol);
}

std::shared_ptr<QuadraticFunction> squared_norm_function(std::size_t n) {
  Vector h(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 2.0;
  return std::make_shared<QuadraticFunction>(n, h, Vector(n, 0.0));
}

std::shared_ptr<RevenueFunction> two_vertex_revenue(double p) {
  auto g = std::make_shared<Graph>(Graph::from_edges(2, {{0, 1, 1.0}}));
  return std::make_shared<RevenueFunction>(g, p);
}

// Variational inequality of the Euclidean projection: <x - P x, y - P x> <= 0.
double projection_vi_violation(const ConvexBody& body, const Vector& x, RngStream& rng) {
  const Vector p = body.project(x);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vector y = body.project(scaled(rng.uniform_cube(body.dimension()), 1.5));
    worst = std::max(worst, dot(subtract(x, p), subtract(y, p)));
  }
  return worst;
}

}  // namespace

TEST_CASE("vector ops: join, meet and dimension errors") {
  const Vector a{0.2, 0.9, 0.5}, b{0.4, 0.1, 0.5};
  CHECK(vee(a, b) == Vector{0.4, 0.9, 0.5});
  CHECK(wedge(a, b) == Vector{0.2, 0.1, 0.5});
  CHECK(dot(a, b) == doctest::Approx(0.08 + 0.09 + 0.25));
  CHECK(norm_inf(Vector{-3.0, 2.0}) == 3.0);
  CHECK_THROWS_AS(dot(a, Vector{1.0}), DimensionError);
  CHECK(leq(wedge(a, b), vee(a, b)));
}

TEST_CASE("membership") {
  CHECK(ConvexBody::hypercube(2).contains(Vector{0.3, 1.0}));
  CHECK_FALSE(ConvexBody::hypercube(2).contains(Vector{0.3, 1.1}));
  CHECK_FALSE(ConvexBody::uniform_budget(2, 1.0).contains(Vector{0.6, 0.6}));
  CHECK(ConvexBody::uniform_budget(2, 1.0).contains(Vector{0.5, 0.5}));
  const auto band = ConvexBody::sum_band(2, 0.1, 1.0);
  CHECK_FALSE(band.contains(Vector{0.0, 0.0}));
  CHECK(band.contains(Vector{0.05, 0.05}));
  CHECK_FALSE(band.down_closed());
  CHECK(ConvexBody::uniform_budget(3, 1.0).down_closed());
}

TEST_CASE("linear_maximize on structured bodies") {
  CHECK(ConvexBody::hypercube(3).linear_maximize(Vector{1.0, -2.0, 0.0}) == Vector{1.0, 0.0, 0.0});
  check_vec(ConvexBody::uniform_budget(2, 1.0).linear_maximize(Vector{3.0, 2.0}), {1.0, 0.0});
  check_vec(ConvexBody::uniform_budget(2, 1.5).linear_maximize(Vector{3.0, 2.0}), {1.0, 0.5});
}

TEST_CASE("linear_maximize agrees with the simplex reference") {
  RngStream rng(11);
  const std::size_t n = 4;
  const auto budget = ConvexBody::budget(Vector{1.0, 2.0, 0.5, 1.5}, 2.0);
  const auto band = ConvexBody::sum_band(n, 0.5, 2.5);
  const auto poly = ConvexBody::polytope({{1.0, 1.0, 0.0, 0.0}, {0.0, 1.0, 1.0, 1.0}, {-1.0, 0.0, 0.0, -1.0}},
                                         Vector{1.2, 1.5, -0.3});
  for (const ConvexBody* body : {&budget, &band, &poly}) {
    // The same region written as A x <= b, x >= 0 with the box rows added.
    std::vector<Vector> rows;
    Vector rhs;
    if (body->kind() == BodyKind::kPolytope) {
      rows = body->rows();
      rhs = body->rhs();
    } else {
      rows.push_back(body->costs());
      rhs.push_back(body->max_total());
      if (std::isfinite(body->min_total()) && body->min_total() > 0.0) {
        rows.push_back(scaled(body->costs(), -1.0));
        rhs.push_back(-body->min_total());
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(basis(n, i));
      rhs.push_back(1.0);
    }
    for (int trial = 0; trial < 50; ++trial) {
      Vector w(n);
      for (auto& v : w) v = rng.uniform(-1.0, 1.0);
      const Vector x = body->linear_maximize(w);
      CHECK(body->contains(x));
      const auto ref = lp::maximize(rows, rhs, w);
      REQUIRE(ref.status == lp::Status::kOptimal);
      CHECK(dot(w, x) == doctest::Approx(ref.objective).epsilon(1e-9));
    }
  }
}

TEST_CASE("projection") {
  check_vec(ConvexBody::hypercube(2).project(Vector{1.4, -0.2}), {1.0, 0.0});
  check_vec(ConvexBody::uniform_budget(2, 1.0).project(Vector{1.0, 1.0}), {0.5, 0.5}, 1e-9);
  const Vector inside{0.2, 0.3};
  check_vec(ConvexBody::uniform_budget(2, 1.0).project(inside), inside, 1e-12);

  RngStream rng(5);
  const auto poly = ConvexBody::polytope({{1.0, 1.0, 1.0}, {1.0, -1.0, 0.0}}, Vector{1.5, 0.2});
  for (const auto& body : {ConvexBody::hypercube(3), ConvexBody::uniform_budget(3, 1.0),
                           ConvexBody::budget(Vector{2.0, 1.0, 0.5}, 1.0), ConvexBody::sum_band(3, 0.5, 1.0), poly}) {
    for (int trial = 0; trial < 30; ++trial) {
      Vector x(3);
      for (auto& v : x) v = rng.uniform(-0.5, 1.5);
      const Vector p = body.project(x);
      CHECK(body.max_violation(p) <= kProjectionTol);
      CHECK(projection_vi_violation(body, x, rng) <= 1e-6);
      check_vec(body.project(p), p, 1e-6);
    }
  }
}

TEST_CASE("min_inf_norm_point") {
  CHECK(ConvexBody::hypercube(3).min_inf_norm_point() == Vector(3, 0.0));
  check_vec(ConvexBody::sum_band(2, 0.1, 1.0).min_inf_norm_point(), {0.05, 0.05}, 1e-9);
  // x_1 <= x_2: a cone through the origin.
  const auto cone = ConvexBody::polytope({{1.0, -1.0}}, Vector{0.0});
  check_vec(cone.min_inf_norm_point(), {0.0, 0.0}, 1e-9);
  CHECK_THROWS_AS(ConvexBody::sum_band(2, 3.0, 4.0), InfeasibleBodyError);
}

TEST_CASE("diameter") {
  CHECK(ConvexBody::hypercube(4).diameter() == doctest::Approx(2.0));
  CHECK(ConvexBody::uniform_budget(2, 1.0).diameter() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("smoothed estimates") {
  RngStream rng(3);
  const LinearFunction lin(Vector{1.0, -2.0, 0.5});
  const Vector x{0.4, 0.5, 0.6};
  const auto est = smoothed_value_and_gradient(lin, x, 0.01, 20000, rng);
  CHECK(est.value == doctest::Approx(lin.value(x)).epsilon(1e-3));
  const ConstantFunction c(3, 4.0);
  const auto cest = smoothed_value_and_gradient(c, x, 0.01, 2000, rng);
  CHECK(cest.value == doctest::Approx(4.0));
  CHECK(norm(cest.gradient) == 0.0);
  // delta = 1 / sqrt(T) for T = 10000.
  CHECK(1.0 / std::sqrt(10000.0) == doctest::Approx(0.01));
}

TEST_CASE("dr_check") {
  RngStream rng(9);
  CHECK(dr_check(*two_vertex_revenue(0.3), 1000, rng).passed());
  const auto sq = squared_norm_function(3);
  CHECK_FALSE(sq->dr_submodular());
  const DrReport bad = dr_check(*sq, 1000, rng);
  CHECK_FALSE(bad.passed());
  CHECK(bad.value_violation > 0.0);
  const DrReport lin = dr_check(LinearFunction(Vector{1.0, -1.0, 2.0}), 1000, rng);
  CHECK(lin.value_violation <= 1e-15);
  CHECK(lin.gradient_violation == 0.0);
}

TEST_CASE("grad_check") {
  CHECK(grad_check(LinearFunction(Vector{1.0, -3.0}), Vector{0.3, 0.6}, 1e-5) <= 1e-9);
  const auto rev = two_vertex_revenue(0.5);
  const Vector g0 = rev->gradient(Vector{0.0, 0.0});
  CHECK(g0[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(g0[1] == doctest::Approx(0.6931).epsilon(1e-4));
  CHECK(grad_check(*rev, Vector{0.25, 0.75}, 1e-5) <= 1e-6);
  RngStream rng(2);
  const auto q = random_quadratic(6, 0.5, rng);
  CHECK(grad_check(*q, Vector{0.2, 0.7, 0.4, 0.9, 0.3, 0.6}, 1e-5) <= 1e-6);
}

TEST_CASE("property checks on DR-submodular instances") {
  RngStream rng(4);
  auto g = std::make_shared<Graph>(gen_random_graph(6, 0.5, 0.5, 2.0, 4));
  const RevenueFunction rev(g, 0.3);
  const auto q = random_quadratic(6, 0.5, rng);
  for (const DRFunction* f : {static_cast<const DRFunction*>(&rev), static_cast<const DRFunction*>(q.get())}) {
    CHECK(concavity_check(*f, 500, rng).max_violation <= kDrTol);
    CHECK(join_meet_check(*f, 500, rng).max_violation <= kDrTol);
    CHECK(join_lower_bound_check(*f, 500, rng).max_violation <= kDrTol);
  }
  CHECK(concavity_check(*squared_norm_function(3), 500, rng).max_violation > 0.0);
}

TEST_CASE("noisy_gradient statistics") {
  RngStream rng(21);
  const auto rev = two_vertex_revenue(0.5);
  const Vector x{0.3, 0.8};
  const Vector exact = rev->gradient(x);
  CHECK(noisy_gradient(*rev, x, 0.0, rng) == exact);
  const double sigma = 0.5;
  const int draws = 10000;
  Vector mean(2, 0.0);
  double sq = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Vector g = noisy_gradient(*rev, x, sigma, rng);
    axpy(1.0 / draws, g, mean);
    sq += squared_distance(g, exact) / draws;
  }
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::fabs(mean[i] - exact[i]) <= 3.0 * sigma / 100.0);
  CHECK(sq == doctest::Approx(sigma * sigma).epsilon(0.05));
  CHECK_THROWS(noisy_gradient(*rev, x, -1.0, rng));
}

TEST_CASE("function accumulation") {
  auto g = std::make_shared<Graph>(gen_random_graph(5, 0.6, 1.0, 1.0, 8));
  auto f1 = std::make_shared<RevenueFunction>(g, 0.2);
  auto f2 = std::make_shared<RevenueFunction>(g, 0.2);
  auto f3 = std::make_shared<RevenueFunction>(g, 0.4);
  FunctionAccumulator acc(5);
  acc.add(f1);
  acc.add(f2);
  acc.add(f3);
  acc.add(std::make_shared<ConstantFunction>(5, 1.5));
  CHECK(acc.count() == 4);
  CHECK(acc.merged_terms() == 2);
  CHECK(acc.generic_terms() == 1);
  const Vector x{0.1, 0.5, 0.9, 0.3, 0.7};
  CHECK(acc.value(x) == doctest::Approx(f1->value(x) + f2->value(x) + f3->value(x) + 1.5));
  const Vector ga = acc.gradient(x);
  const Vector g1 = f1->gradient(x), g3 = f3->gradient(x);
  for (std::size_t i = 0; i < 5; ++i) CHECK(ga[i] == doctest::Approx(2.0 * g1[i] + g3[i]));
}

TEST_CASE("gradient bound estimate") {
  RngStream rng(1);
  const LinearFunction lin(Vector{3.0, 4.0});
  CHECK(estimate_gradient_bound(lin, 16, rng, 1.1) == doctest::Approx(5.5));
}

TEST_CASE("rng streams replay") {
  RngStream a(42), b(42), c(43);
  for (int k = 0; k < 10; ++k) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.substream(3).uniform() == b.substream(3).uniform());
  CHECK(c.uniform() != RngStream(42).uniform());
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

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
#include "odrs/hypercube.hpp"
#include "odrs/instances.hpp"

using namespace odrs;

namespace {

class TableFunction final : public SetFunction {
 public:
  explicit TableFunction(std::size_t n, std::function<double(const Subset&)> f) : n_(n), f_(std::move(f)) {}
  std::size_t ground_size() const override { return n_; }
  double value(const Subset& s) const override { return f_(s); }

 private:
  std::size_t n_;
  std::function<double(const Subset&)> f_;
};

// Weighted cut of a random graph: non-negative and submodular.
TableFunction random_cut(std::size_t n, RngStream& rng) {
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(0.6)) w[i * n + j] = w[j * n + i] = rng.uniform();
    }
  }
  return TableFunction(n, [w, n](const Subset& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (s[i] && !s[j]) v += w[i * n + j];
      }
    }
    return v;
  });
}

class EmptyOracle final : public DiscreteOracle {
 public:
  explicit EmptyOracle(std::size_t g) : s_(g, 0), first_(g, 1) {}
  std::size_t ground_size() const override { return s_.size(); }
  const Subset& play() override { return rounds_ == 0 ? first_ : s_; }
  void feedback(const SetFunctionView&) override { ++rounds_; }
  std::string name() const override { return "empty"; }

 private:
  Subset s_, first_;
  std::size_t rounds_ = 0;
};

}  // namespace

TEST_CASE("default binary resolution") {
  CHECK(default_binary_resolution(1000) == 10);
  CHECK(default_binary_resolution(1024) == 10);
  CHECK(default_binary_resolution(1025) == 11);
  CHECK(default_binary_resolution(1) == 1);
}

TEST_CASE("binary lift and unlift") {
  const BinaryLattice one(1, 2);
  CHECK(one.lift(Vector{0.75}) == Subset{0, 1, 1});
  CHECK(one.lift(Vector{1.0}) == Subset{1, 0, 0});
  CHECK(one.unlift(Subset{0, 1, 1}) == Vector{0.75});
  CHECK_FALSE(one.in_image(Subset{1, 1, 0}));
  CHECK_THROWS(one.unlift(Subset{1, 1, 0}));
  CHECK(one.unlift_clamped(Subset{1, 1, 0}) == Vector{1.0});
  CHECK_FALSE(one.on_lattice(Vector{0.3}));

  const BinaryLattice lat(2, 3);
  std::size_t count = 0;
  for (std::size_t a = 0; a <= 8; ++a) {
    for (std::size_t b = 0; b <= 8; ++b) {
      const Vector x{a / 8.0, b / 8.0};
      const Subset s = lat.lift(x);
      CHECK(lat.in_image(s));
      CHECK(lat.unlift(s) == x);
      ++count;
    }
  }
  CHECK(count == 81);
  CHECK(lat.element(1, 2) == 6);
}

TEST_CASE("submodularity of lifted set functions") {
  RngStream rng(1);
  auto g = std::make_shared<const Graph>(Graph::from_edges(2, {{0, 1, 1.0}}));
  const BinaryLattice lat(2, 2);
  const SetFunctionView rev(std::make_shared<RevenueFunction>(g, 0.5), lat);
  const auto on_image = submodularity_bruteforce(rev, rng, 0, &lat);
  CHECK(on_image.exhaustive);
  CHECK(on_image.max_violation <= 1e-9);
  const auto full = submodularity_bruteforce(rev, rng);
  MESSAGE("revenue violation over all subsets: ", full.max_violation);

  const SetFunctionView lin(std::make_shared<LinearFunction>(Vector{1.0, -2.0}), lat);
  CHECK(submodularity_bruteforce(lin, rng, 0, &lat).max_violation == 0.0);

  Vector h{2.0, 0.0, 0.0, 2.0};
  const SetFunctionView sq(std::make_shared<QuadraticFunction>(2, h, Vector(2, 0.0)), lat);
  CHECK(submodularity_bruteforce(sq, rng, 0, &lat).max_violation > 0.0);
}

TEST_CASE("double greedy") {
  RngStream rng(2);
  const TableFunction modular(2, [](const Subset& s) { return 1.0 + 3.0 * s[0] - 1.0 * s[1]; });
  for (int k = 0; k < 50; ++k) CHECK(double_greedy(modular, rng) == Subset{1, 0});
  const TableFunction zero(5, [](const Subset&) { return 0.0; });
  CHECK(double_greedy(zero, rng) == Subset(5, 1));
  const TableFunction negative(2, [](const Subset& s) { return s[0] ? -1.0 : 0.5; });
  CHECK_THROWS(double_greedy(negative, rng));
  CHECK_NOTHROW(double_greedy(negative, rng, false));
  CHECK_THROWS(double_greedy(modular, rng, std::vector<std::size_t>{0, 0}));
  CHECK(double_greedy(modular, rng, std::vector<std::size_t>{1, 0}) == Subset{1, 0});
}

TEST_CASE("double greedy is a 1/2 approximation in expectation") {
  RngStream rng(3);
  const std::size_t n = 8;
  for (int inst = 0; inst < 10; ++inst) {
    const TableFunction f = random_cut(n, rng);
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Subset s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1u;
      best = std::max(best, f.value(s));
    }
    double mean = 0.0;
    for (int seed = 0; seed < 200; ++seed) {
      RngStream r(1000 + seed);
      mean += f.value(double_greedy(f, r)) / 200.0;
    }
    CHECK(mean >= 0.5 * best - 1e-9);
  }
}

TEST_CASE("hypercube learner") {
  HypercubeConfig cfg;
  cfg.horizon = 10;
  cfg.resolution = 2;
  const BinaryLattice lat(3, 2);
  HypercubeLearner learner(3, cfg, std::make_unique<EmptyOracle>(lat.ground_size()));
  RngStream rng(4);
  auto f = std::make_shared<LinearFunction>(Vector{1.0, 1.0, 1.0});
  CHECK(learner.play() == Vector(3, 1.0));
  for (int t = 0; t < 5; ++t) {
    learner.feedback(f, rng);
    CHECK(learner.play() == Vector(3, 0.0));
  }
  CHECK_THROWS(HypercubeLearner(3, cfg, std::make_unique<EmptyOracle>(5)));
  CHECK_THROWS(HypercubeLearner(3, HypercubeConfig{}));

  HypercubeConfig auto_m;
  auto_m.horizon = 1000;
  auto_m.seed = 8;
  HypercubeLearner base(4, auto_m);
  CHECK(base.lattice().m() == 10);
  RngStream qr(5);
  for (int t = 0; t < 20; ++t) {
    const Vector x = base.play();
    CHECK(in_unit_cube(x));
    CHECK(base.lattice().on_lattice(x));
    base.feedback(random_quadratic(4, 0.5, qr), rng);
  }
  CHECK_THROWS_AS(base.feedback(f, rng), std::exception);
}

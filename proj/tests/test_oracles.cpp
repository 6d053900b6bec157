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
#include "odrs/linear_oracle.hpp"
#include "odrs/rng.hpp"

using namespace odrs;

namespace {

std::shared_ptr<const ConvexBody> shared(ConvexBody b) { return std::make_shared<const ConvexBody>(std::move(b)); }

// Mean of regret / sqrt(T) over seeds for i.i.d. rewards d = mu + U[-1, 1]^n.
double scaled_regret(OracleStrategy s, std::size_t horizon, std::size_t seeds) {
  const std::size_t n = 4;
  const Vector mu{0.3, -0.2, 0.1, 0.0};
  double total = 0.0;
  for (std::size_t k = 0; k < seeds; ++k) {
    OracleConfig cfg;
    cfg.strategy = s;
    cfg.gradient_bound = std::sqrt(static_cast<double>(n)) * 1.3;
    cfg.horizon = horizon;
    cfg.seed = 100 + k;
    LinearOracle o(shared(ConvexBody::uniform_budget(n, 2.0)), cfg);
    RngStream rng(7 + k);
    for (std::size_t t = 0; t < horizon; ++t) {
      o.play();
      Vector d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = mu[i] + rng.uniform(-1.0, 1.0);
      o.feedback(d);
    }
    total += o.regret() / std::sqrt(static_cast<double>(horizon));
  }
  return total / static_cast<double>(seeds);
}

}  // namespace

TEST_CASE("olo_play: first round") {
  OracleConfig cfg;
  cfg.strategy = OracleStrategy::kAscent;
  LinearOracle o(shared(ConvexBody::sum_band(2, 0.1, 1.0)), cfg);
  const Vector x = o.play();
  CHECK(x[0] == doctest::Approx(0.05));
  CHECK(x[1] == doctest::Approx(0.05));
  CHECK(o.play() == x);
}

TEST_CASE("olo_play: leader without perturbation") {
  OracleConfig cfg;
  cfg.strategy = OracleStrategy::kLeader;
  cfg.noise_width = 0.0;
  LinearOracle o(shared(ConvexBody::hypercube(2)), cfg);
  o.play();
  o.feedback(Vector{1.0, -1.0});
  CHECK(o.play() == Vector{1.0, 0.0});
}

TEST_CASE("olo_play: one ascent step") {
  OracleConfig cfg;
  cfg.strategy = OracleStrategy::kAscent;
  cfg.ascent_scale = 0.1;
  cfg.initial = Vector{0.5};
  LinearOracle o(shared(ConvexBody::hypercube(1)), cfg);
  CHECK(o.play()[0] == 0.5);
  o.feedback(Vector{1.0});
  CHECK(o.play()[0] == doctest::Approx(0.6));
}

TEST_CASE("olo_feedback") {
  OracleConfig lead;
  lead.strategy = OracleStrategy::kLeader;
  LinearOracle a(shared(ConvexBody::hypercube(2)), lead);
  CHECK(a.cumulative_reward() == Vector{0.0, 0.0});
  a.play();
  a.feedback(Vector{2.0, -1.0});
  CHECK(a.cumulative_reward() == Vector{2.0, -1.0});

  OracleConfig asc;
  asc.strategy = OracleStrategy::kAscent;
  asc.initial = Vector{1.0, 1.0};
  LinearOracle b(shared(ConvexBody::hypercube(2)), asc);
  b.play();
  b.feedback(Vector{1.0, 1.0});
  CHECK(b.play() == Vector{1.0, 1.0});
  CHECK_THROWS_AS(b.feedback(Vector{1.0}), DimensionError);

  LinearOracle c(shared(ConvexBody::hypercube(2)), asc);
  CHECK_THROWS_AS(c.feedback(Vector{1.0, 1.0}), ProtocolError);
}

TEST_CASE("olo regret grows like sqrt(T)") {
  for (auto s : {OracleStrategy::kAscent, OracleStrategy::kLeader}) {
    CAPTURE(strategy_name(s));
    const double r1 = scaled_regret(s, 250, 8);
    const double r2 = scaled_regret(s, 1000, 8);
    const double r3 = scaled_regret(s, 4000, 8);
    MESSAGE("regret/sqrt(T): ", r1, " ", r2, " ", r3);
    // D = 2, G = 2.6 for this setup.
    CHECK(r1 <= 2.0 * 2.6 * 1.5);
    CHECK(r3 <= 2.0 * 2.6 * 1.5);
    CHECK(r3 <= 2.0 * std::max(r1, r2));
  }
}

TEST_CASE("olo_regret") {
  const auto cube = ConvexBody::hypercube(2);
  CHECK(olo_regret({Vector{0.0, 0.0}}, {Vector{1.0, 0.0}}, cube) == 1.0);
  const std::vector<Vector> rewards{{1.0, -2.0}, {0.5, 1.0}, {2.0, 0.5}};
  const Vector best = cube.linear_maximize(Vector{3.5, -0.5});
  CHECK(olo_regret({best, best, best}, rewards, cube) == 0.0);

  // Brute force over the 2^n vertices of the cube.
  RngStream rng(17);
  const std::size_t n = 3;
  const auto cube3 = ConvexBody::hypercube(n);
  std::vector<Vector> plays, ds;
  Vector total(n, 0.0);
  double got = 0.0;
  for (int t = 0; t < 10; ++t) {
    plays.push_back(rng.uniform_cube(n));
    Vector d(n);
    for (auto& v : d) v = rng.uniform(-1.0, 1.0);
    axpy(1.0, d, total);
    got += dot(d, plays.back());
    ds.push_back(d);
  }
  double best_value = -1e300;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1u;
    best_value = std::max(best_value, dot(total, v));
  }
  CHECK(olo_regret(plays, ds, cube3) == doctest::Approx(best_value - got).epsilon(1e-12));
}

TEST_CASE("oracles replay with a fixed seed") {
  OracleConfig cfg;
  cfg.strategy = OracleStrategy::kLeader;
  cfg.seed = 77;
  LinearOracle a(shared(ConvexBody::uniform_budget(3, 1.0)), cfg);
  LinearOracle b(shared(ConvexBody::uniform_budget(3, 1.0)), cfg);
  RngStream rng(1);
  for (int t = 0; t < 50; ++t) {
    CHECK(a.play() == b.play());
    Vector d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    a.feedback(d);
    b.feedback(d);
  }
  CHECK(parse_strategy("ftpl") == OracleStrategy::kLeader);
  CHECK_THROWS(parse_strategy("sideways"));
}

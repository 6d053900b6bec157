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


#include "odrs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "odrs/checks.hpp"
#include "odrs/config.hpp"
#include "odrs/hypercube.hpp"
#include "odrs/instances.hpp"
#include "odrs/lift.hpp"

namespace odrs {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

class Recorder {
 public:
  Recorder(std::string suite, VerifyReport& report) : suite_(std::move(suite)), report_(report) {}

  void at_most(const std::string& name, double value, double tol) {
    push(name, value, "<= " + num(tol), value <= tol);
  }
  void at_least(const std::string& name, double value, double tol) {
    push(name, value, ">= " + num(tol), value >= tol);
  }
  void exact(const std::string& name, double value, double expected) {
    push(name, value, "== " + num(expected), value == expected);
  }
  // Runs `body`, recording a failure if it throws.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      push(name, std::numeric_limits<double>::quiet_NaN(), std::string("threw: ") + e.what(), false);
    }
  }

 private:
  void push(const std::string& name, double value, std::string rel, bool ok) {
    report_.checks.push_back({suite_, name, value, std::move(rel), ok});
  }
  std::string suite_;
  VerifyReport& report_;
};

std::shared_ptr<RevenueFunction> small_revenue(std::uint64_t seed, std::size_t n, double p) {
  auto g = std::make_shared<const Graph>(gen_random_graph(n, 0.5, 0.5, 2.0, seed));
  return std::make_shared<RevenueFunction>(g, p);
}

std::shared_ptr<RevenueFunction> two_vertex_revenue(double p) {
  auto g = std::make_shared<const Graph>(Graph::from_edges(2, {{0, 1, 1.0}}));
  return std::make_shared<RevenueFunction>(g, p);
}

void function_checks(Recorder& rec, const std::string& label, const DRFunction& f, RngStream& rng) {
  const DrReport dr = dr_check(f, 1000, rng);
  rec.at_most(label + ".dr_value", dr.value_violation, kDrTol);
  rec.at_most(label + ".dr_gradient", dr.gradient_violation, kDrTol);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    Vector x = rng.uniform_cube(f.dimension());
    for (double& v : x) v = 0.01 + 0.98 * v;
    worst = std::max(worst, grad_check(f, x, 1e-5));
  }
  rec.at_most(label + ".grad_check", worst, 1e-5);
  rec.at_most(label + ".concavity", concavity_check(f, 1000, rng).max_violation, kDrTol);
  rec.at_most(label + ".join_meet", join_meet_check(f, 1000, rng).max_violation, kDrTol);
  rec.at_most(label + ".join_lower_bound", join_lower_bound_check(f, 1000, rng).max_violation, kDrTol);
}

void body_checks(Recorder& rec, const std::string& label, const ConvexBody& body, RngStream& rng) {
  const std::size_t n = body.dimension();
  auto wide = [&]() {
    Vector a = rng.uniform_cube(n);
    for (double& v : a) v = 2.0 * v - 0.5;
    return a;
  };
  double idem = 0.0, expand = 0.0, infeasible = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vector a = wide(), b = wide();
    const Vector pa = body.project(a), pb = body.project(b);
    idem = std::max(idem, distance(body.project(pa), pa));
    expand = std::max(expand, distance(pa, pb) - distance(a, b));
    infeasible = std::max(infeasible, body.max_violation(pa));
  }
  rec.at_most(label + ".project_idempotent", idem, kProjectionTol);
  rec.at_most(label + ".project_nonexpansive", expand, kProjectionTol);
  rec.at_most(label + ".project_feasible", infeasible, kProjectionTol);

  std::vector<Vector> feasible;
  for (int k = 0; k < 1000; ++k) feasible.push_back(body.project(rng.uniform_cube(n)));
  double beaten = 0.0, lm_infeasible = 0.0;
  for (int k = 0; k < 50; ++k) {
    Vector w = rng.uniform_cube(n);
    for (double& v : w) v = 2.0 * v - 1.0;
    const Vector v = body.linear_maximize(w);
    lm_infeasible = std::max(lm_infeasible, body.max_violation(v));
    const double best = dot(w, v);
    for (const auto& x : feasible) beaten = std::max(beaten, dot(w, x) - best);
  }
  rec.at_most(label + ".linear_max_feasible", lm_infeasible, kFeasibilityTol);
  rec.at_most(label + ".linear_max_dominates_samples", beaten, kFeasibilityTol);
}

void suite_core(VerifyReport& report, const VerifyOptions& opt) {
  Recorder rec("core", report);
  RngStream rng(mix_seed(opt.seed, 1));

  rec.guard("functions", [&] {
    function_checks(rec, "revenue", *small_revenue(opt.seed, 8, 0.3), rng);
    function_checks(rec, "quadratic", *random_quadratic(6, 0.6, rng), rng);
    Vector w = rng.uniform_cube(5);
    function_checks(rec, "linear", LinearFunction(w), rng);
  });

  rec.guard("noisy_gradient", [&] {
    const auto q = random_quadratic(6, 0.6, rng);
    const Vector x = rng.uniform_cube(6);
    const Vector g = q->gradient(x);
    const double sigma = 0.5;
    const std::size_t draws = 10000;
    Vector mean(6, 0.0);
    double sq = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
      const Vector s = noisy_gradient(*q, x, sigma, rng);
      axpy(1.0 / static_cast<double>(draws), s, mean);
      sq += squared_distance(s, g);
    }
    double bias = 0.0;
    for (std::size_t i = 0; i < 6; ++i) bias = std::max(bias, std::fabs(mean[i] - g[i]));
    rec.at_most("noisy_gradient.mean_error", bias, 3.0 * sigma / 100.0);
    rec.at_most("noisy_gradient.variance_rel_error", std::fabs(sq / draws / (sigma * sigma) - 1.0), 0.05);
    RngStream r2(1);
    rec.exact("noisy_gradient.sigma0_error", distance(noisy_gradient(*q, x, 0.0, r2), g), 0.0);
  });

  rec.guard("bodies", [&] {
    body_checks(rec, "hypercube", ConvexBody::hypercube(5), rng);
    body_checks(rec, "budget", ConvexBody::budget({1.0, 2.0, 0.5, 3.0, 1.0}, 2.0), rng);
    body_checks(rec, "band", ConvexBody::sum_band(5, 0.5, 2.0), rng);
    body_checks(rec, "polytope",
                ConvexBody::polytope({{1, 1, 0, 0, 0}, {0, 1, 1, 1, 0}, {-1, -1, -1, -1, -1}}, {1.0, 1.5, -0.5}), rng);
  });

  rec.guard("oracles", [&] {
    auto body = std::make_shared<const ConvexBody>(ConvexBody::budget({1.0, 2.0, 0.5, 3.0, 1.0}, 2.0));
    for (OracleStrategy s : {OracleStrategy::kAscent, OracleStrategy::kLeader}) {
      const std::string label = std::string("oracle.") + std::string(strategy_name(s));
      OracleConfig oc;
      oc.strategy = s;
      oc.gradient_bound = 3.0;
      oc.horizon = 200;
      oc.seed = opt.seed;
      LinearOracle a(body, oc), b(body, oc);
      RngStream rr(mix_seed(opt.seed, 2));
      const Vector fixed = rr.uniform_cube(5);
      std::vector<Vector> plays, rewards;
      double infeasible = 0.0, mismatch = 0.0;
      for (int t = 0; t < 200; ++t) {
        const Vector pa = a.play();
        const Vector pb = b.play();
        infeasible = std::max(infeasible, body->max_violation(pa));
        mismatch = std::max(mismatch, distance(pa, pb));
        plays.push_back(pa);
        rewards.push_back(fixed);
        a.feedback(fixed);
        b.feedback(fixed);
      }
      rec.at_most(label + ".play_feasible", infeasible, kFeasibilityTol);
      rec.exact(label + ".replay_mismatch", mismatch, 0.0);
      rec.at_least(label + ".regret_nonnegative", olo_regret(plays, rewards, *body), -1e-9);
    }
  });
}

void suite_lift(VerifyReport& report, const VerifyOptions& opt) {
  Recorder rec("lift", report);
  RngStream rng(mix_seed(opt.seed, 3));

  rec.guard("roundtrip", [&] {
    double bad = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t m = 1; m <= 4; ++m) {
        const UnaryLattice lat(n, m);
        std::vector<std::size_t> lv(n, 0);
        while (true) {
          const Vector x = lat.from_levels(lv);
          const Vector bits = lat.lift(x);
          if (!lat.is_staircase(bits) || lat.unlift(bits) != x || lat.bit_levels(bits) != lv) bad += 1.0;
          std::size_t i = 0;
          while (i < n && lv[i] == m) lv[i++] = 0;
          if (i == n) break;
          ++lv[i];
        }
      }
    }
    rec.exact("unary_roundtrip_failures", bad, 0.0);
  });

  rec.guard("monotone_map", [&] {
    const UnaryLattice lat(2, 4);
    double bad = 0.0, join_bad = 0.0;
    for (std::size_t a = 0; a < 25; ++a) {
      for (std::size_t b = 0; b < 25; ++b) {
        const Vector x = lat.from_levels({a % 5, a / 5});
        const Vector y = lat.from_levels({b % 5, b / 5});
        const Vector lx = lat.lift(x), ly = lat.lift(y);
        if (leq(x, y) != leq(lx, ly)) bad += 1.0;
        if (lat.lift(vee(x, y)) != vee(lx, ly)) join_bad += 1.0;
      }
    }
    rec.exact("monotone_map_failures", bad, 0.0);
    rec.exact("join_map_failures", join_bad, 0.0);
  });

  rec.guard("vee_identity", [&] {
    const UnaryLattice lat(5, 4);
    double worst = 0.0, worst_lin = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vector c = lat.snap(rng.uniform_cube(5));
      const Vector x = lat.snap(rng.uniform_cube(5));
      Vector a = rng.uniform_cube(5);
      for (double& v : a) v = 4.0 * v - 2.0;
      const Vector at = lat.lift_reward(a);
      worst = std::max(worst, std::fabs(dot(a, vee(c, x)) - dot(at, vee(lat.lift(c), lat.lift(x)))));
      worst_lin = std::max(worst_lin, std::fabs(dot(a, c) - dot(at, lat.lift(c))));
    }
    rec.at_most("vee_reward_identity", worst, 1e-12);
    rec.at_most("linear_reward_identity", worst_lin, 1e-12);
  });

  rec.guard("lifted_body", [&] {
    const LiftedBody body(ConvexBody::uniform_budget(3, 1.5), 3);
    const UnaryLattice& lat = body.lattice();
    double gap = 0.0;
    for (int k = 0; k < 200; ++k) {
      Vector w = rng.uniform_cube(9);
      for (double& v : w) v = 2.0 * v - 1.0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t code = 0; code < 64; ++code) {
        const std::vector<std::size_t> lv = {code % 4, (code / 4) % 4, code / 16};
        if (lv[0] + lv[1] + lv[2] > body.increments()) continue;
        best = std::max(best, dot(w, lat.lift_levels(lv)));
      }
      gap = std::max(gap, std::fabs(best - dot(w, body.linear_maximize(w))));
    }
    rec.at_most("linear_max_vs_enumeration", gap, 1e-12);

    double idem = 0.0, expand = 0.0, infeasible = 0.0, stair = 0.0;
    for (int k = 0; k < 100; ++k) {
      Vector a = rng.uniform_cube(9), b = rng.uniform_cube(9);
      for (double& v : a) v = 2.0 * v - 0.5;
      for (double& v : b) v = 2.0 * v - 0.5;
      const Vector pa = body.project(a), pb = body.project(b);
      idem = std::max(idem, distance(body.project(pa), pa));
      expand = std::max(expand, distance(pa, pb) - distance(a, b));
      if (!body.contains(pa)) infeasible += 1.0;
      if (!lat.is_staircase(pa, 1e-9)) stair += 1.0;
    }
    rec.at_most("project_idempotent", idem, kProjectionTol);
    rec.at_most("project_nonexpansive", expand, kProjectionTol);
    rec.exact("project_infeasible", infeasible, 0.0);
    rec.exact("project_not_staircase", stair, 0.0);
  });

  rec.guard("caratheodory", [&] {
    const LiftedBody body(ConvexBody::hypercube(4), 4);
    const double eps = 0.05;
    double worst = 0.0, not_vertex = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Vector y = body.project(rng.uniform_cube(16));
      const RoundingResult r = caratheodory_round(body, y, eps, 16.0, rng);
      worst = std::max(worst, r.gap);
      for (const auto& lv : r.vertices) {
        if (!body.contains(body.lattice().lift_levels(lv))) not_vertex += 1.0;
      }
    }
    rec.at_most("gap", worst, eps);
    rec.exact("vertices_outside", not_vertex, 0.0);

    const Vector y = body.project(rng.uniform_cube(16));
    const RoundingResult ref = caratheodory_round(body, y, eps, 16.0, rng);
    Vector mean(16, 0.0);
    const std::size_t draws = 2000;
    for (std::size_t k = 0; k < draws; ++k) {
      RoundingResult r = caratheodory_round(body, y, eps, 16.0, rng);
      axpy(1.0 / static_cast<double>(draws), body.lattice().lift_levels(r.vertices[r.chosen]), mean);
    }
    rec.at_most("selection_mean_error", norm_inf(subtract(mean, ref.mean)), 0.05);
  });

  rec.guard("defaults", [&] {
    double bad = 0.0;
    for (std::size_t t : {1, 10, 100, 1000, 4096}) {
      for (std::size_t n : {1, 2, 20}) {
        const double want = std::max(1.0, std::ceil(std::pow(static_cast<double>(t) / n, 0.25) - 1e-12));
        if (static_cast<double>(default_unary_resolution(t, n)) != want) bad += 1.0;
      }
    }
    rec.exact("default_resolution_mismatches", bad, 0.0);
  });

  rec.guard("vee_oracle", [&] {
    auto body = std::make_shared<const LiftedBody>(ConvexBody::uniform_budget(4, 2.0), 3);
    VeeConfig vc;
    vc.m = 3;
    vc.epsilon = 0.1;
    vc.inner.gradient_bound = 2.0;
    vc.inner.horizon = 100;
    vc.inner.seed = opt.seed;
    VeeOracle a(body, vc), b(body, vc);
    double off = 0.0, mismatch = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Vector xa = a.play();
      const Vector xb = b.play();
      if (!body->lattice().on_lattice(xa) || !body->base().contains(xa)) off += 1.0;
      mismatch = std::max(mismatch, distance(xa, xb));
      const Vector c = rng.uniform_cube(4);
      const Vector r = rng.uniform_cube(4);
      a.feedback(c, r);
      b.feedback(c, r);
    }
    rec.exact("plays_off_lattice_or_infeasible", off, 0.0);
    rec.exact("replay_mismatch", mismatch, 0.0);
  });
}

void suite_mfw(VerifyReport& report, const VerifyOptions& opt) {
  Recorder rec("mfw", report);

  rec.guard("harmonic_sum", [&] {
    double worst = 0.0;
    for (std::size_t l : {1, 2, 8, 64, 1000}) {
      worst = std::max(worst, std::fabs(StepSchedule::harmonic(l).eta_sum() - kHarmonicKappa));
    }
    rec.at_most("harmonic_eta_sum_error", worst, 1e-12);
  });

  rec.guard("defaults", [&] {
    double bad = 0.0;
    bad += default_levels_down_closed(1000, 64) != 64;
    bad += default_levels_down_closed(16, 64) != 8;
    bad += default_levels_general(10, 64) != 10;
    bad += default_levels_general(1000, 64) != 64;
    const auto ph = doubling_phases(10, 64);
    std::vector<std::size_t> lengths;
    for (const auto& p : ph) lengths.push_back(p.length);
    bad += lengths != std::vector<std::size_t>{1, 2, 4, 3};
    rec.exact("default_mismatches", bad, 0.0);
  });

  rec.guard("averager", [&] {
    GradientAverager avg(3);
    RngStream rng(mix_seed(opt.seed, 4));
    Vector d(3, 0.0);
    double worst = 0.0;
    for (std::size_t l = 1; l <= 50; ++l) {
      const Vector g = rng.uniform_cube(3);
      const double r = default_rho(l);
      for (std::size_t i = 0; i < 3; ++i) d[i] = (1.0 - r) * d[i] + r * g[i];
      worst = std::max(worst, distance(avg.update(g), d));
    }
    rec.at_most("averager_recurrence_error", worst, 1e-15);
  });

  auto graph = std::make_shared<const Graph>(gen_random_graph(20, 0.3, 1.0, 1.0, 7));
  const std::size_t T = 30, L = 16;
  auto config = [&](std::uint64_t s) {
    MfwConfig c;
    c.levels = L;
    c.horizon = T;
    c.oracle.gradient_bound = RevenueFunction(graph, 0.01).analytic_gradient_bound();
    c.oracle.seed = s;
    if (opt.canary_double_step) c.eta = Vector(L, 2.0 / static_cast<double>(L));
    return c;
  };

  rec.guard("down_closed_run", [&] {
    DownClosedMetaFW engine(ConvexBody::uniform_budget(20, 1.0), config(opt.seed));
    rec.at_most("down_closed_eta_sum", engine.schedule().eta_sum(), 1.0 + 1e-12);
    BatchSampler sampler(graph, 8, 0.01, mix_seed(opt.seed, 5));
    RngStream rng(mix_seed(opt.seed, 6));
    double slack = std::numeric_limits<double>::infinity(), infeasible = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const Vector x = engine.play();
      infeasible = std::max(infeasible, engine.body().max_violation(x));
      slack = std::min(slack, down_closed_invariant_slack(engine));
      engine.feedback(sampler.sample(), rng);
    }
    rec.at_least("down_closed_norm_invariant_slack", slack, -1e-12);
    rec.at_most("down_closed_play_violation", infeasible, kFeasibilityTol);
  });

  rec.guard("general_run", [&] {
    MfwConfig c = config(opt.seed + 1);
    c.eta.reset();
    GeneralMetaFW engine(ConvexBody::sum_band(20, 0.1, 1.0), c);
    BatchSampler sampler(graph, 8, 0.01, mix_seed(opt.seed, 7));
    RngStream rng(mix_seed(opt.seed, 8));
    double slack = std::numeric_limits<double>::infinity(), infeasible = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const Vector x = engine.play();
      infeasible = std::max(infeasible, engine.body().max_violation(x));
      slack = std::min(slack, general_invariant_slack(engine));
      engine.feedback(sampler.sample(), rng);
    }
    rec.at_least("general_product_invariant_slack", slack, -1e-12);
    rec.at_most("general_play_violation", infeasible, kFeasibilityTol);
  });

  rec.guard("variance_reduction", [&] {
    const auto vr = variance_reduction_harness(1.0, 0.5, 3.0, 200, 100, 10, opt.seed);
    rec.at_most("variance_reduction_worst_ratio", vr.worst_ratio, 1.0);
  });
}

void suite_hypercube(VerifyReport& report, const VerifyOptions& opt) {
  Recorder rec("hypercube", report);
  RngStream rng(mix_seed(opt.seed, 9));

  rec.guard("roundtrip", [&] {
    const BinaryLattice lat(2, 3);
    double bad = 0.0;
    const std::size_t steps = 8;
    for (std::size_t a = 0; a <= steps; ++a) {
      for (std::size_t b = 0; b <= steps; ++b) {
        const Vector x = {static_cast<double>(a) / steps, static_cast<double>(b) / steps};
        const Subset s = lat.lift(x);
        if (!lat.in_image(s) || lat.unlift(s) != x) bad += 1.0;
      }
    }
    rec.exact("binary_roundtrip_failures", bad, 0.0);
  });

  rec.guard("submodularity", [&] {
    const BinaryLattice lat(2, 2);
    const SetFunctionView rev(two_vertex_revenue(0.5), lat);
    rec.at_most("revenue_lifted_submodularity", submodularity_bruteforce(rev, rng, 0, &lat).max_violation, 1e-9);
    const SetFunctionView quad(random_quadratic(2, 1.0, rng), lat);
    rec.at_most("quadratic_lifted_submodularity", submodularity_bruteforce(quad, rng, 0, &lat).max_violation, 1e-9);
    const SetFunctionView rev8(small_revenue(opt.seed, 2, 0.3), lat);
    rec.at_most("random_revenue_lifted_submodularity", submodularity_bruteforce(rev8, rng, 0, &lat).max_violation,
                1e-9);
  });

  rec.guard("learner_plays", [&] {
    HypercubeConfig hc;
    hc.horizon = 50;
    hc.seed = opt.seed;
    HypercubeLearner learner(3, hc);
    double off = 0.0;
    RngStream r2(mix_seed(opt.seed, 10));
    for (int t = 0; t < 50; ++t) {
      const Vector x = learner.play();
      const Subset s = learner.lattice().lift(x);
      if (!in_unit_cube(x) || !learner.lattice().on_lattice(x) || !learner.lattice().in_image(s)) off += 1.0;
      learner.feedback(random_quadratic(3, 0.7, rng), r2);
    }
    rec.exact("plays_off_lattice", off, 0.0);
  });

  rec.guard("double_greedy_relabel", [&] {
    // f(S) = cut weight of S in a weighted 4-cycle plus a modular term.
    const double w[4][4] = {{0, 1.0, 0.2, 0.7}, {1.0, 0, 0.5, 0.1}, {0.2, 0.5, 0, 0.9}, {0.7, 0.1, 0.9, 0}};
    const double mod[4] = {0.3, -0.2, 0.1, 0.0};
    struct Cut final : SetFunction {
      const double (*w)[4];
      const double* mod;
      std::vector<std::size_t> perm;  // element e of this view is element perm[e] of the base
      std::size_t ground_size() const override { return 4; }
      double value(const Subset& s) const override {
        double v = 1.0;
        bool in[4];
        for (std::size_t e = 0; e < 4; ++e) in[perm[e]] = s[e] != 0;
        for (std::size_t i = 0; i < 4; ++i) {
          if (in[i]) v += mod[i];
          for (std::size_t j = 0; j < 4; ++j) {
            if (in[i] && !in[j]) v += w[i][j];
          }
        }
        return v;
      }
    };
    const std::vector<std::size_t> perm = {2, 0, 3, 1};
    Cut base;
    base.w = w;
    base.mod = mod;
    base.perm = {0, 1, 2, 3};
    Cut relabeled = base;
    relabeled.perm = perm;
    // Visiting base elements in order perm matches visiting the relabeled ground set in index order.
    const std::size_t trials = 10000;
    std::vector<double> c1(16, 0.0), c2(16, 0.0);
    RngStream ra(mix_seed(opt.seed, 11)), rb(mix_seed(opt.seed, 12));
    for (std::size_t k = 0; k < trials; ++k) {
      const Subset s1 = double_greedy(base, ra, perm);
      const Subset s2 = double_greedy(relabeled, rb);
      std::size_t code1 = 0, code2 = 0;
      for (std::size_t e = 0; e < 4; ++e) {
        if (s1[e]) code1 |= std::size_t{1} << e;
        if (s2[e]) code2 |= std::size_t{1} << perm[e];
      }
      c1[code1] += 1.0;
      c2[code2] += 1.0;
    }
    double chi2 = 0.0;
    std::size_t cells = 0;
    for (std::size_t k = 0; k < 16; ++k) {
      const double tot = c1[k] + c2[k];
      if (tot == 0.0) continue;
      ++cells;
      const double e = tot / 2.0;
      chi2 += (c1[k] - e) * (c1[k] - e) / e + (c2[k] - e) * (c2[k] - e) / e;
    }
    // 0.1% critical values of chi-square with cells - 1 degrees of freedom.
    static const double crit[] = {0, 10.83, 13.82, 16.27, 18.47, 20.52, 22.46, 24.32, 26.12,
                                  27.88, 29.59, 31.26, 32.91, 34.53, 36.12, 37.70};
    const double limit = cells >= 2 ? crit[cells - 1] : 0.0;
    rec.at_most("double_greedy_relabel_chi2", chi2, limit);
  });
}

void suite_instances(VerifyReport& report, const VerifyOptions& opt) {
  Recorder rec("instances", report);
  RngStream rng(mix_seed(opt.seed, 13));
  namespace fs = std::filesystem;

  rec.guard("revenue_examples", [&] {
    const auto f = two_vertex_revenue(0.5);
    const Vector g0 = f->gradient(Vector{0.0, 0.0});
    rec.at_most("revenue_grad_origin_error", std::max(std::fabs(g0[0] - std::log(2.0)), std::fabs(g0[1] - std::log(2.0))),
                1e-12);
    rec.exact("revenue_value_origin", f->value(Vector{0.0, 0.0}), 0.0);
    rec.at_most("revenue_value_11_error", std::fabs(f->value(Vector{1.0, 1.0}) - 0.5), 1e-12);
    rec.at_most("revenue_value_10_error", std::fabs(f->value(Vector{1.0, 0.0}) - 0.5), 1e-12);
    rec.at_most("revenue_p05_partial_11_abs", std::fabs(f->gradient(Vector{1.0, 1.0})[1]), 1e-15);
    rec.at_most("revenue_p09_partial_11", two_vertex_revenue(0.9)->gradient(Vector{1.0, 1.0})[1], -1e-6);
  });

  rec.guard("revenue_dr_condition", [&] {
    // The vertex-degree predicate must agree with the randomized DR check,
    // including on directed graphs and for p > 1/2.
    double mismatches = 0.0, curvature = 0.0;
    for (std::uint64_t k = 0; k < 12; ++k) {
      RngStream gr(mix_seed(opt.seed, 100 + k));
      std::vector<Edge> edges;
      for (std::size_t u = 0; u < 4; ++u) {
        for (std::size_t v = 0; v < 4; ++v) {
          if (u != v && gr.bernoulli(0.6)) edges.push_back({u, v, gr.uniform(0.1, 2.0)});
        }
      }
      if (edges.empty()) edges.push_back({0, 1, 1.0});
      auto g = std::make_shared<const Graph>(Graph::from_edges(4, edges, k % 2 == 0));
      const RevenueFunction f(g, 0.1 + 0.07 * static_cast<double>(k));
      if (f.dr_submodular() != dr_check(f, 2000, rng).passed()) mismatches += 1.0;
      // d2F/dx_i2 = -|ln q| dF/dx_i.
      Vector x = rng.uniform_cube(4);
      for (double& v : x) v = 0.01 + 0.98 * v;
      const double h = 1e-5, lq = std::fabs(std::log1p(-f.p()));
      const Vector g0 = f.gradient(x);
      for (std::size_t i = 0; i < 4; ++i) {
        Vector up = x, dn = x;
        up[i] += h;
        dn[i] -= h;
        const double second = (f.gradient(up)[i] - f.gradient(dn)[i]) / (2.0 * h);
        curvature = std::max(curvature, std::fabs(second + lq * g0[i]) / (1.0 + std::fabs(second)));
      }
    }
    rec.exact("revenue_dr_predicate_mismatches", mismatches, 0.0);
    rec.at_most("revenue_curvature_identity", curvature, 1e-6);
  });

  rec.guard("batches", [&] {
    auto graph = std::make_shared<const Graph>(gen_random_graph(30, 0.3, 0.5, 2.0, opt.seed));
    BatchSampler sampler(graph, 10, 0.05, mix_seed(opt.seed, 14));
    double worst = 0.0, worst_grad = 0.0;
    for (int k = 0; k < 5; ++k) {
      const auto f = sampler.sample();
      const DrReport dr = dr_check(*f, 200, rng);
      worst = std::max({worst, dr.value_violation, dr.gradient_violation});
      Vector x = rng.uniform_cube(30);
      for (double& v : x) v = 0.01 + 0.98 * v;
      worst_grad = std::max(worst_grad, grad_check(*f, x, 1e-5));
    }
    rec.at_most("batch_dr_violation", worst, kDrTol);
    rec.at_most("batch_grad_check", worst_grad, 1e-5);
    BatchSampler full(graph, 30, 0.05, 1), none(graph, 0, 0.05, 1);
    const RevenueFunction whole(graph, 0.05);
    const Vector x = rng.uniform_cube(30);
    rec.at_most("batch_full_equals_graph", std::fabs(full.sample()->value(x) - whole.value(x)), 1e-12);
    rec.exact("batch_empty_is_zero", none.sample()->value(x), 0.0);
  });

  rec.guard("quadratic", [&] {
    double neg = 0.0, not_dr = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto q = random_quadratic(6, 0.5, rng);
      if (!q->dr_submodular()) not_dr += 1.0;
      for (int j = 0; j < 50; ++j) neg = std::max(neg, -q->value(rng.uniform_cube(6)));
      neg = std::max(neg, std::fabs(q->value(Vector(6, 0.0))));
    }
    rec.exact("quadratic_not_dr", not_dr, 0.0);
    rec.at_most("quadratic_negative_or_nonzero_origin", neg, 1e-12);
  });

  rec.guard("edge_lists", [&] {
    const fs::path dir = fs::temp_directory_path() / ("odrs_verify_" + std::to_string(opt.seed));
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream(dir / name) << text;
      return (dir / name).string();
    };
    const Graph g1 = load_edge_list(write("a.txt", "0 1\n1 2"));
    rec.exact("edge_list_vertices", static_cast<double>(g1.num_vertices()), 3.0);
    rec.exact("edge_list_w12", g1.weight(2, 1), 1.0);
    rec.exact("edge_list_empty_vertices", static_cast<double>(load_edge_list(write("b.txt", "")).num_vertices()), 0.0);
    rec.exact("edge_list_duplicate_sum", load_edge_list(write("c.txt", "# c\n0 1 2.5\n0 1 0.5\n")).weight(0, 1), 3.0);
    auto rejected_line = [&](const std::string& name, const std::string& text) {
      try {
        load_edge_list(write(name, text));
      } catch (const EdgeListError& e) {
        return static_cast<double>(e.line());
      }
      return -1.0;
    };
    rec.exact("edge_list_self_loop_line", rejected_line("d.txt", "0 1\n2 2\n"), 2.0);
    rec.exact("edge_list_negative_line", rejected_line("e.txt", "0 1\n1 2\n2 3 -1\n"), 3.0);
    rec.exact("edge_list_malformed_line", rejected_line("f.txt", "0 1\nzero one\n"), 2.0);
    const Graph rnd = gen_random_graph(12, 0.4, 0.5, 2.0, opt.seed);
    save_edge_list(rnd, (dir / "g.txt.gz").string());
    const Graph back = load_edge_list((dir / "g.txt.gz").string());
    double diff = back.num_vertices() == rnd.num_vertices() ? 0.0 : 1.0;
    for (const auto& e : rnd.arcs()) diff = std::max(diff, std::fabs(back.weight(e.u, e.v) - e.w));
    rec.exact("edge_list_gzip_roundtrip_error", diff, 0.0);
    fs::remove_all(dir);
  });

  rec.guard("generator", [&] {
    rec.exact("gen_p0_edges", static_cast<double>(gen_random_graph(10, 0.0, 1, 1, 1).num_edges()), 0.0);
    rec.exact("gen_p1_n3_edges", static_cast<double>(gen_random_graph(3, 1.0, 1, 1, 1).num_edges()), 3.0);
    const auto a = gen_random_graph(100, 0.1, 1, 1, 5).arcs();
    const auto b = gen_random_graph(100, 0.1, 1, 1, 5).arcs();
    const auto c = gen_random_graph(100, 0.1, 1, 1, 6).arcs();
    bool same = a.size() == b.size();
    for (std::size_t k = 0; same && k < a.size(); ++k) same = a[k].u == b[k].u && a[k].v == b[k].v && a[k].w == b[k].w;
    bool differ = a.size() != c.size();
    for (std::size_t k = 0; !differ && k < a.size(); ++k) differ = a[k].u != c[k].u || a[k].v != c[k].v;
    rec.exact("gen_same_seed_identical", same ? 1.0 : 0.0, 1.0);
    rec.exact("gen_other_seed_differs", differ ? 1.0 : 0.0, 1.0);
  });
}

using SuiteFn = void (*)(VerifyReport&, const VerifyOptions&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> m = {
      {"core", suite_core}, {"lift", suite_lift}, {"mfw", suite_mfw},
      {"hypercube", suite_hypercube}, {"instances", suite_instances},
  };
  return m;
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"core", "lift", "mfw", "hypercube", "instances"};
  return names;
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& options) {
  VerifyReport report;
  if (suite == "all") {
    for (const auto& name : verify_suite_names()) suites().at(name)(report, options);
    return report;
  }
  const auto it = suites().find(suite);
  if (it == suites().end()) throw ConfigError("unknown verify suite '" + suite + "'");
  it->second(report, options);
  return report;
}

std::string format_check(const CheckResult& c) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", c.value);
  return std::string(c.passed ? "PASS " : "FAIL ") + c.suite + "/" + c.name + " = " + buf + " (" + c.relation + ")";
}

double down_closed_invariant_slack(const DownClosedMetaFW& engine) {
  const auto& pts = engine.trace().points;
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t l = 1; l < pts.size(); ++l) {
    slack = std::min(slack, (1.0 - norm_inf(pts[l])) - engine.schedule().survival(l));
  }
  return slack;
}

double general_invariant_slack(const GeneralMetaFW& engine) {
  const auto& pts = engine.trace().points;
  double slack = std::numeric_limits<double>::infinity();
  if (pts.empty()) return slack;
  const Vector& x1 = pts.front();
  for (std::size_t l = 1; l < pts.size(); ++l) {
    const double surv = engine.schedule().survival(l);
    for (std::size_t i = 0; i < x1.size(); ++i) {
      slack = std::min(slack, (1.0 - pts[l][i]) - surv * (1.0 - x1[i]));
    }
  }
  return slack;
}

VarianceReductionResult variance_reduction_harness(double c, double sigma, double s, std::size_t levels,
                                                   std::size_t seeds, std::size_t dim, std::uint64_t seed,
                                                   std::size_t first_level) {
  VarianceReductionResult out;
  out.first_level = first_level;
  out.empirical.assign(levels, 0.0);
  out.bound.assign(levels, 0.0);
  // |a_0 - d_0| = 1 with d_0 = 0.
  out.q = std::max(std::pow(s + 1.0, 2.0 / 3.0), 4.0 * sigma * sigma + 1.5 * c * c);
  const double per_coord = sigma / std::sqrt(static_cast<double>(dim));
  for (std::size_t k = 0; k < seeds; ++k) {
    RngStream rng(mix_seed(seed, k));
    Vector a = rng.unit_sphere(dim);
    const Vector drift = rng.unit_sphere(dim);
    Vector d(dim, 0.0);
    for (std::size_t l = 1; l <= levels; ++l) {
      axpy(c / (static_cast<double>(l) + s), drift, a);
      const double rho = 2.0 / std::pow(static_cast<double>(l) + s, 2.0 / 3.0);
      for (std::size_t i = 0; i < dim; ++i) {
        const double g = a[i] + per_coord * rng.normal();
        d[i] = (1.0 - rho) * d[i] + rho * g;
      }
      out.empirical[l - 1] += squared_distance(a, d) / static_cast<double>(seeds);
    }
  }
  for (std::size_t l = 1; l <= levels; ++l) {
    out.bound[l - 1] = 2.0 * out.q / std::pow(static_cast<double>(l) + s + 1.0, 2.0 / 3.0);
    if (l >= first_level) out.worst_ratio = std::max(out.worst_ratio, out.empirical[l - 1] / out.bound[l - 1]);
  }
  return out;
}

}  // namespace odrs

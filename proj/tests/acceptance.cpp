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

// Acceptance run: one PASS/FAIL line per criterion, thresholds fixed below.
// Usage: odrs_acceptance [criterion numbers...]; no arguments runs all 13.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "odrs/checks.hpp"
#include "odrs/config.hpp"
#include "odrs/experiment.hpp"
#include "odrs/hypercube.hpp"
#include "odrs/instances.hpp"
#include "odrs/lift.hpp"
#include "odrs/mfw.hpp"
#include "odrs/verify.hpp"

using namespace odrs;

namespace {

// Pinned thresholds.
constexpr double kDrViolationMax = 1e-8;
constexpr double kGradRelErrMax = 1e-5;
constexpr double kPropertyTol = 1e-8;
constexpr double kLiftTol = 1e-12;
constexpr double kSubmodularTol = 1e-9;
constexpr double kRoundingEps = 0.05;
constexpr double kSelectionTol = 0.02;
constexpr double kInvariantSlack = -1e-12;
constexpr double kDownClosedFloor = 0.30;
constexpr double kGeneralFloor = 0.15;
constexpr double kHypercubeFloor = 0.45;
constexpr double kDoublingGap = 0.05;
constexpr double kCrit1Seconds = 30.0;
constexpr double kCrit5Seconds = 120.0;
constexpr double kCrit8Seconds = 600.0;
constexpr double kCrit9Seconds = 600.0;
constexpr double kCrit10Seconds = 300.0;

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ConfigMap criterion8_map() {
  return {{"algorithm", "down-closed"}, {"body", "budget"}, {"budget", "1"}, {"instance", "revenue"},
          {"n", "20"},  {"batch", "8"},  {"T", "500"},    {"L", "32"},     {"sigma", "0"},
          {"replicas", "5"}};
}

ConfigMap with(ConfigMap m, const ConfigMap& extra) {
  for (const auto& [k, v] : extra) m[k] = v;
  return m;
}

std::string metadata_value(const Metadata& md, const std::string& key) {
  for (const auto& [k, v] : md) {
    if (k == key) return v;
  }
  return "";
}

std::vector<std::shared_ptr<const DRFunction>> dr_instances() {
  const auto cfg = ExperimentConfig::from_map(criterion8_map());
  const Instance inst = prepare_instance(cfg);
  std::vector<std::shared_ptr<const DRFunction>> out;
  out.push_back(std::make_shared<RevenueFunction>(inst.graph, cfg.p));
  BatchSampler sampler(inst.graph, cfg.batch, cfg.p, kSeed);
  out.push_back(sampler.sample());
  // The steepest p at which an undirected revenue function stays DR-submodular.
  out.push_back(std::make_shared<RevenueFunction>(inst.graph, 0.5));
  RngStream rng(kSeed);
  out.push_back(random_quadratic(20, 0.5, rng));
  out.push_back(random_quadratic(5, 1.0, rng));
  return out;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(mix_seed(kSeed, 1));
  double dr = 0.0, grad = 0.0;
  for (const auto& f : dr_instances()) {
    const DrReport rep = dr_check(*f, 1000, rng);
    dr = std::max({dr, rep.value_violation, rep.gradient_violation});
    for (int k = 0; k < 100; ++k) {
      Vector x = rng.uniform_cube(f->dimension());
      for (auto& v : x) v = 0.01 + 0.98 * v;
      grad = std::max(grad, grad_check(*f, x, 1e-6));
    }
  }
  const double secs = seconds_since(start);
  return {dr <= kDrViolationMax && grad <= kGradRelErrMax && secs < kCrit1Seconds,
          "dr violation " + fmt("%.3g", dr) + " <= 1e-8, grad rel err " + fmt("%.3g", grad) + " <= 1e-5, " +
              fmt("%.2f", secs) + " s < 30 s"};
}

Outcome criterion2() {
  RngStream rng(mix_seed(kSeed, 2));
  double concave = 0.0, join_meet = 0.0, join_lb = 0.0;
  for (const auto& f : dr_instances()) {
    concave = std::max(concave, concavity_check(*f, 1000, rng).max_violation);
    join_meet = std::max(join_meet, join_meet_check(*f, 1000, rng).max_violation);
    join_lb = std::max(join_lb, join_lower_bound_check(*f, 1000, rng).max_violation);
  }
  const double worst = std::max({concave, join_meet, join_lb});
  return {worst <= kPropertyTol, "concavity " + fmt("%.3g", concave) + ", join/meet " + fmt("%.3g", join_meet) +
                                     ", join lower bound " + fmt("%.3g", join_lb) + " (all <= 1e-8)"};
}

Outcome criterion3() {
  std::size_t unary_bad = 0, binary_bad = 0, points = 0;
  const UnaryLattice ul(2, 4);
  for (std::size_t a = 0; a <= 4; ++a) {
    for (std::size_t b = 0; b <= 4; ++b) {
      const Vector x = ul.from_levels({a, b});
      if (ul.unlift(ul.lift(x)) != x || ul.levels(x) != std::vector<std::size_t>{a, b}) ++unary_bad;
      ++points;
    }
  }
  const BinaryLattice bl(2, 3);
  for (std::size_t a = 0; a <= 8; ++a) {
    for (std::size_t b = 0; b <= 8; ++b) {
      const Vector x{a / 8.0, b / 8.0};
      if (bl.unlift(bl.lift(x)) != x) ++binary_bad;
      ++points;
    }
  }
  // Every subset of the 8-element ground set that lies in the image decodes and re-encodes.
  for (unsigned mask = 0; mask < 256; ++mask) {
    Subset s(8);
    for (std::size_t i = 0; i < 8; ++i) s[i] = (mask >> i) & 1u;
    if (bl.in_image(s) && bl.lift(bl.unlift(s)) != s) ++binary_bad;
  }

  RngStream rng(mix_seed(kSeed, 3));
  const UnaryLattice lat(4, 5);
  double inner = 0.0, join = 0.0, ident = 0.0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<std::size_t> lc(4), lx(4);
    for (auto& l : lc) l = rng.index(6);
    for (auto& l : lx) l = rng.index(6);
    const Vector c = lat.from_levels(lc), x = lat.from_levels(lx);
    Vector a(4);
    for (auto& v : a) v = rng.uniform(-5.0, 5.0);
    inner = std::max(inner, std::fabs(dot(a, c) - dot(lat.lift_reward(a), lat.lift(c))));
    join = std::max(join, distance(lat.lift(vee(c, x)), vee(lat.lift(c), lat.lift(x))));
    const Vector one_c = lat.lift(c);
    const Vector z = rng.uniform_cube(one_c.size());
    const Vector lhs = vee(one_c, z);
    for (std::size_t i = 0; i < z.size(); ++i) {
      ident = std::max(ident, std::fabs(lhs[i] - (z[i] + one_c[i] * (1.0 - z[i]))));
    }
  }
  const bool ok = unary_bad == 0 && binary_bad == 0 && inner <= kLiftTol && join <= kLiftTol && ident <= kLiftTol;
  return {ok, std::to_string(points) + " exhaustive round trips (" + std::to_string(unary_bad + binary_bad) +
                  " failures), <a,c> vs <a~,1_C> " + fmt("%.3g", inner) + ", join map " + fmt("%.3g", join) +
                  ", vee identity " + fmt("%.3g", ident) + " (<= 1e-12)"};
}

Outcome criterion4() {
  RngStream rng(mix_seed(kSeed, 4));
  const BinaryLattice lat(2, 2);
  double worst = 0.0;
  bool exhaustive = true;
  std::vector<FunctionPtr> fs;
  auto pair = std::make_shared<const Graph>(Graph::from_edges(2, {{0, 1, 1.0}}));
  fs.push_back(std::make_shared<RevenueFunction>(pair, 0.5));
  fs.push_back(std::make_shared<RevenueFunction>(pair, 0.01));
  for (int k = 0; k < 20; ++k) {
    auto g = std::make_shared<const Graph>(Graph::from_edges(2, {{0, 1, rng.uniform(0.1, 2.0)}}));
    fs.push_back(std::make_shared<RevenueFunction>(g, rng.uniform(0.01, 0.5)));
  }
  for (const auto& f : fs) {
    const auto rep = submodularity_bruteforce(SetFunctionView(f, lat), rng, 0, &lat);
    worst = std::max(worst, rep.max_violation);
    exhaustive = exhaustive && rep.exhaustive;
  }
  return {exhaustive && worst <= kSubmodularTol,
          std::to_string(fs.size()) + " revenue instances, exhaustive chains on the lattice image, violation " +
              fmt("%.3g", worst) + " <= 1e-9"};
}

Outcome criterion5() {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(mix_seed(kSeed, 5));
  const LiftedBody body(ConvexBody::hypercube(4), 4);
  double worst_gap = 0.0;
  std::size_t failures = 0;
  Vector fixed;
  for (int k = 0; k < 100; ++k) {
    // Random relaxed staircase: sorted uniforms per block.
    Vector y(16);
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<double> u(4);
      for (auto& v : u) v = rng.uniform();
      std::sort(u.rbegin(), u.rend());
      for (std::size_t j = 0; j < 4; ++j) y[i * 4 + j] = u[j];
    }
    if (k == 0) fixed = y;
    try {
      worst_gap = std::max(worst_gap, caratheodory_round(body, y, kRoundingEps, 16.0, rng).gap);
    } catch (const RoundingError& e) {
      ++failures;
      worst_gap = std::max(worst_gap, e.gap());
    }
  }
  const int draws = 10000;
  Vector freq(16, 0.0), mean;
  for (int k = 0; k < draws; ++k) {
    const auto r = caratheodory_round(body, fixed, kRoundingEps, 16.0, rng);
    mean = r.mean;
    axpy(1.0 / draws, body.lattice().lift_levels(r.vertices[r.chosen]), freq);
  }
  const double sel = norm_inf(subtract(freq, mean));
  const double secs = seconds_since(start);
  return {failures == 0 && worst_gap <= kRoundingEps && sel <= kSelectionTol && secs < kCrit5Seconds,
          "max gap " + fmt("%.4f", worst_gap) + " <= 0.05 on 100 points, selection error " + fmt("%.4f", sel) +
              " <= 0.02 over 1e4 draws, " + fmt("%.2f", secs) + " s < 120 s"};
}

Outcome criterion6() {
  const auto dc_cfg = ExperimentConfig::from_map(with(criterion8_map(), {{"T", "200"}, {"L", "16"}}));
  const Instance inst = prepare_instance(dc_cfg);
  MfwConfig mc;
  mc.horizon = 200;
  mc.levels = 16;
  mc.oracle.strategy = dc_cfg.oracle;
  mc.oracle.gradient_bound = inst.gradient_bound;
  mc.oracle.seed = kSeed;
  DownClosedMetaFW dc(inst.body, mc);
  InstanceStream s1(dc_cfg, inst, kSeed);
  RngStream r1(kSeed);
  double dc_slack = 1e300;
  for (int t = 0; t < 200; ++t) {
    dc.play();
    dc_slack = std::min(dc_slack, down_closed_invariant_slack(dc));
    dc.feedback(s1.next(), r1);
  }

  const auto gen_cfg = ExperimentConfig::from_map(
      with(criterion8_map(), {{"algorithm", "general"}, {"body", "band"}, {"T", "200"}, {"L", "16"}}));
  const Instance ginst = prepare_instance(gen_cfg);
  GeneralMetaFW gen(ginst.body, mc);
  InstanceStream s2(gen_cfg, ginst, kSeed);
  double gen_slack = 1e300;
  for (int t = 0; t < 200; ++t) {
    gen.play();
    gen_slack = std::min(gen_slack, general_invariant_slack(gen));
    gen.feedback(s2.next(), r1);
  }
  return {dc_slack >= kInvariantSlack && gen_slack >= kInvariantSlack,
          "min slack down-closed " + fmt("%.3g", dc_slack) + ", general " + fmt("%.3g", gen_slack) +
              " (>= -1e-12 over 200 rounds x 16 levels)"};
}

Outcome criterion7() {
  const auto vr = variance_reduction_harness(1.0, 0.5, 3.0, 200, 100, 10, kSeed);
  return {vr.passed(), "max empirical / bound over l >= 5: " + fmt("%.4f", vr.worst_ratio) + " <= 1 (Q = " +
                           fmt("%.4g", vr.q) + ")"};
}

struct Timed {
  ExperimentResult result;
  double seconds = 0.0;
};

Timed run(const ConfigMap& m) {
  const auto start = std::chrono::steady_clock::now();
  Timed t;
  t.result = run_experiment(ExperimentConfig::from_map(m));
  t.seconds = seconds_since(start);
  return t;
}

// Criterion 8 is reused by 12 and 13.
const Timed& criterion8_run() {
  static const Timed t = run(criterion8_map());
  return t;
}

Outcome criterion8() {
  const Timed& t = criterion8_run();
  const double r = t.result.mean_final_ratio;
  return {r >= kDownClosedFloor && t.seconds < kCrit8Seconds,
          "mean final ratio " + fmt("%.4f", r) + " (std " + fmt("%.4f", t.result.std_final_ratio) +
              ") >= 0.30, " + fmt("%.1f", t.seconds) + " s < 600 s"};
}

Outcome criterion9() {
  const Timed t = run(with(criterion8_map(), {{"algorithm", "general"}, {"body", "band"}, {"band_min", "0.1"},
                                              {"band_max", "1"}}));
  const double r = t.result.mean_final_ratio;
  const std::string x0 = metadata_value(t.result.metadata, "engine.x0_inf_norm");
  const std::string target = metadata_value(t.result.metadata, "engine.target_ratio");
  // The band's min-sup-norm point is band_min / n in every coordinate.
  return {r >= kGeneralFloor && t.seconds < kCrit9Seconds && std::fabs(std::stod(x0) - 0.1 / 20.0) <= 1e-9,
          "mean final ratio " + fmt("%.4f", r) + " >= 0.15, |x0|_inf = " + fmt("%.4f", std::stod(x0)) +
              ", target " + fmt("%.4f", std::stod(target)) + ", " + fmt("%.1f", t.seconds) + " s < 600 s"};
}

Outcome criterion10() {
  const Timed t = run({{"algorithm", "hypercube"}, {"body", "hypercube"}, {"instance", "quadratic"}, {"n", "5"},
                       {"M", "2"}, {"T", "2000"}, {"hindsight", "lattice"}, {"replicas", "5"}});
  const double r = t.result.mean_final_ratio;
  return {r >= kHypercubeFloor && t.seconds < kCrit10Seconds,
          "mean final ratio " + fmt("%.4f", r) + " >= 0.45 against the 5^5 lattice, " + fmt("%.1f", t.seconds) +
              " s < 300 s"};
}

Outcome criterion11() {
  std::vector<double> regret;
  std::string detail = "mean regret/T";
  for (const char* horizon : {"250", "500", "1000"}) {
    const Timed t = run({{"T", horizon}});
    regret.push_back(t.result.mean_average_regret);
    detail += std::string(" T=") + horizon + ": " + fmt("%.6f", t.result.mean_average_regret) + " (ratio " +
              fmt("%.4f", t.result.mean_final_ratio) + ")";
  }
  const bool ok = regret[0] > regret[1] && regret[1] > regret[2];
  return {ok, detail + (ok ? ", strictly decreasing" : ", not strictly decreasing")};
}

Outcome criterion12() {
  const Timed known = criterion8_run();
  const Timed doubled = run(with(criterion8_map(), {{"algorithm", "doubling-down-closed"}}));
  const double gap = std::fabs(doubled.result.mean_final_ratio - known.result.mean_final_ratio);
  return {gap <= kDoublingGap, "doubling " + fmt("%.4f", doubled.result.mean_final_ratio) + " vs known T " +
                                   fmt("%.4f", known.result.mean_final_ratio) + ", gap " + fmt("%.4f", gap) +
                                   " <= 0.05"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion13() {
  const std::filesystem::path base = std::filesystem::temp_directory_path() / "odrs_acceptance_determinism";
  std::filesystem::remove_all(base);
  std::vector<std::string> files[2];
  for (int k = 0; k < 2; ++k) {
    ConfigMap m = with(criterion8_map(), {{"out_dir", (base / std::to_string(k)).string()}, {"name", "crit8"},
                                          {"format", "csv"}});
    auto cfg = ExperimentConfig::from_map(m);
    const ExperimentResult res = k == 0 ? criterion8_run().result : run_experiment(cfg);
    for (const auto& p : write_outputs(cfg, res)) files[k].push_back(slurp(p));
  }
  bool same = files[0].size() == files[1].size() && !files[0].empty();
  for (std::size_t i = 0; same && i < files[0].size(); ++i) same = files[0][i] == files[1][i];
  std::filesystem::remove_all(base);
  return {same, std::to_string(files[0].size()) + " CSV files compared byte for byte: " +
                    (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  // Outputs of criterion 13 must land where this program puts them.
  ::unsetenv(kOutputDirEnv);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"DR and gradient correctness", criterion1},
      {"lattice-function properties", criterion2},
      {"lifting algebra", criterion3},
      {"lifted submodularity", criterion4},
      {"Caratheodory rounding", criterion5},
      {"Frank-Wolfe level invariants", criterion6},
      {"variance reduction", criterion7},
      {"down-closed desk-scale ratio", criterion8},
      {"general-body desk-scale ratio", criterion9},
      {"hypercube desk-scale ratio", criterion10},
      {"sublinearity probe", criterion11},
      {"doubling trick", criterion12},
      {"determinism", criterion13},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(static_cast<std::size_t>(std::atoi(argv[i])));

  std::size_t passed = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ++ran;
    if (o.passed) ++passed;
    std::printf("%s criterion %2zu  %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", passed, ran);
  return passed == ran ? 0 : 1;
}

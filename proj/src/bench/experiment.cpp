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


#include "odrs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "odrs/hypercube.hpp"
#include "odrs/mfw.hpp"

namespace odrs {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr std::uint64_t kStreamTag = 0x73747265616d;
constexpr std::uint64_t kAlgorithmTag = 0x616c676f;
constexpr std::uint64_t kFeedbackTag = 0x66656564;
constexpr std::uint64_t kEstimateTag = 0x657374;
constexpr std::uint64_t kHindsightTag = 0x68696e64;

bool down_closed_algorithm(Algorithm a) {
  return a == Algorithm::kDownClosed || a == Algorithm::kDoublingDownClosed;
}

}  // namespace

Instance prepare_instance(const ExperimentConfig& config) {
  Instance inst;
  if (config.instance == InstanceKind::kRevenue) {
    if (!config.graph_path.empty()) {
      inst.graph = std::make_shared<const Graph>(load_edge_list(config.graph_path));
      inst.metadata.push_back({"graph_source", config.graph_path});
    } else {
      inst.graph = std::make_shared<const Graph>(
          gen_random_graph(config.n, config.edge_prob, config.w_lo, config.w_hi, config.graph_seed));
      inst.metadata.push_back({"graph_source", "generated"});
    }
    inst.n = inst.graph->num_vertices();
    if (inst.n == 0) throw ConfigError("revenue instance needs a non-empty graph");
    if (config.batch > inst.n) throw ConfigError("batch exceeds the number of vertices");
    inst.metadata.push_back({"graph_vertices", std::to_string(inst.n)});
    inst.metadata.push_back({"graph_edges", std::to_string(inst.graph->num_edges())});
    inst.metadata.push_back({"graph_total_weight", fmt(inst.graph->total_weight())});
    inst.metadata.push_back({"p", fmt(config.p)});
    inst.metadata.push_back({"p_original", fmt(config.p_original)});
    inst.metadata.push_back(
        {"revenue_dr_submodular", RevenueFunction(inst.graph, config.p).dr_submodular() ? "true" : "false"});
  } else {
    inst.n = config.n;
  }
  if (config.instance == InstanceKind::kLinear) {
    RngStream rng(mix_seed(config.graph_seed, 0x6c696e));
    inst.linear_weights = rng.uniform_cube(inst.n);
  }
  inst.body = config.make_body(inst.n);
  if (down_closed_algorithm(config.algorithm) && !inst.body.down_closed()) {
    throw ConfigError("the down-closed engine needs a down-closed body");
  }
  inst.metadata.push_back({"n", std::to_string(inst.n)});
  inst.metadata.push_back({"body_description", inst.body.describe()});
  inst.metadata.push_back({"body_diameter", fmt(inst.body.diameter())});
  inst.metadata.push_back({"body_diameter_exact", inst.body.diameter_exact() ? "true" : "false"});

  if (config.gradient_bound > 0.0) {
    inst.gradient_bound = config.gradient_bound;
    inst.gradient_bound_source = "config";
  } else {
    // Separate sample of the same family, never replayed to the learner.
    InstanceStream probe(config, inst, mix_seed(config.seed, kEstimateTag));
    RngStream rng(mix_seed(config.seed, kEstimateTag + 1));
    double g = 0.0;
    for (int k = 0; k < 32; ++k) {
      const FunctionPtr f = probe.next();
      g = std::max(g, estimate_gradient_bound(*f, 64, rng, 1.1));
    }
    inst.gradient_bound = g > 0.0 ? g : 1.0;
    inst.gradient_bound_source = g > 0.0 ? "estimated (32 functions x 64 points, margin 1.1)" : "fallback 1";
  }
  inst.metadata.push_back({"G", fmt(inst.gradient_bound)});
  inst.metadata.push_back({"G_source", inst.gradient_bound_source});
  return inst;
}

InstanceStream::InstanceStream(const ExperimentConfig& config, const Instance& instance, std::uint64_t seed)
    : config_(config), instance_(instance), rng_(seed) {
  if (config.instance == InstanceKind::kRevenue) {
    sampler_ = std::make_unique<BatchSampler>(instance.graph, config.batch, config.p, mix_seed(seed, 1));
  }
}

FunctionPtr InstanceStream::next() {
  switch (config_.instance) {
    case InstanceKind::kRevenue:
      return sampler_->sample();
    case InstanceKind::kQuadratic:
      return random_quadratic(instance_.n, config_.density, rng_);
    case InstanceKind::kLinear:
      return std::make_shared<LinearFunction>(instance_.linear_weights);
    case InstanceKind::kZero:
      return std::make_shared<LinearFunction>(Vector(instance_.n, 0.0));
  }
  throw ConfigError("unknown instance kind");
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const ExperimentConfig& config, const Instance& instance,
                                                std::uint64_t seed) {
  auto mfw_config = [&](std::size_t horizon, std::size_t levels, std::uint64_t s) {
    MfwConfig c;
    c.levels = levels;
    c.level_cap = config.level_cap;
    c.horizon = horizon;
    c.sigma = config.sigma;
    c.oracle.strategy = config.oracle;
    c.oracle.gradient_bound = instance.gradient_bound;
    c.oracle.seed = s;
    c.resolution = config.resolution;
    c.epsilon = config.epsilon;
    c.c0 = config.c0;
    return c;
  };
  switch (config.algorithm) {
    case Algorithm::kDownClosed:
      return std::make_unique<DownClosedMetaFW>(instance.body, mfw_config(config.horizon, config.levels, seed));
    case Algorithm::kGeneral:
      return std::make_unique<GeneralMetaFW>(instance.body, mfw_config(config.horizon, config.levels, seed));
    case Algorithm::kHypercube: {
      HypercubeConfig hc;
      hc.horizon = config.horizon;
      hc.resolution = config.resolution;
      hc.seed = seed;
      return std::make_unique<HypercubeLearner>(instance.n, hc);
    }
    case Algorithm::kDoublingDownClosed:
    case Algorithm::kDoublingGeneral: {
      const bool dc = config.algorithm == Algorithm::kDoublingDownClosed;
      const std::size_t cap = config.levels > 0 ? config.levels : config.level_cap;
      EngineFactory factory = [&config, &instance, dc, seed, mfw_config](const Phase& ph)
          -> std::unique_ptr<OnlineAlgorithm> {
        MfwConfig c = mfw_config(ph.nominal_length, ph.levels, mix_seed(seed, ph.index));
        c.resolution = config.resolution;
        if (dc) return std::make_unique<DownClosedMetaFW>(instance.body, c);
        return std::make_unique<GeneralMetaFW>(instance.body, c);
      };
      return std::make_unique<DoublingRunner>(instance.n, cap, std::move(factory), algorithm_name(config.algorithm));
    }
  }
  throw ConfigError("unknown algorithm");
}

double ReplicaResult::average_regret() const {
  if (rows.empty()) return 0.0;
  return (comparator() - cum_reward()) / static_cast<double>(rows.size());
}

ReplicaResult run_replica(const ExperimentConfig& config, const Instance& instance, std::size_t replica) {
  ReplicaResult out;
  out.replica = replica;
  out.stream_seed = mix_seed(config.seed, kStreamTag + replica);
  out.algorithm_seed = mix_seed(config.seed, kAlgorithmTag + replica);
  const auto start = std::chrono::steady_clock::now();

  InstanceStream stream(config, instance, out.stream_seed);
  auto algorithm = make_algorithm(config, instance, out.algorithm_seed);
  RngStream feedback_rng(mix_seed(config.seed, kFeedbackTag + replica));

  const std::size_t T = config.horizon;
  std::vector<FunctionPtr> functions;
  std::vector<Vector> plays;
  functions.reserve(T);
  plays.reserve(T);
  out.rows.resize(T);
  double cum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const Vector x = algorithm->play();
    const FunctionPtr f = stream.next();
    const double r = f->value(x);
    cum += r;
    algorithm->feedback(f, feedback_rng);
    RoundRecord& row = out.rows[t];
    row.t = t + 1;
    row.reward = r;
    row.cum_reward = cum;
    if (config.timing) {
      row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    functions.push_back(f);
    plays.push_back(x);
  }
  out.algorithm_metadata = algorithm->metadata();

  HindsightOptions opts;
  opts.mode = config.hindsight;
  opts.grid = config.hindsight_grid;
  if (opts.mode == HindsightMode::kLattice && opts.grid == 0 && config.algorithm == Algorithm::kHypercube) {
    const std::size_t m = config.resolution > 0 ? config.resolution : default_binary_resolution(T);
    opts.grid = std::size_t{1} << m;
  }
  opts.fw_levels = config.hindsight_fw_levels;
  opts.restarts = config.hindsight_restarts;
  opts.seed = mix_seed(config.seed, kHindsightTag + replica);
  opts.candidates = std::move(plays);
  out.hindsight = compute_hindsight(functions, instance.body, opts);

  double comp = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    comp += functions[t]->value(out.hindsight.point);
    RoundRecord& row = out.rows[t];
    row.comparator_cum = comp;
    if (comp == 0.0) {
      row.ratio = 1.0;
      ++out.flagged_rows;
    } else {
      row.ratio = row.cum_reward / comp;
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const Instance instance = prepare_instance(config);
  ExperimentResult res;
  res.replicas.resize(config.replicas);

  std::size_t threads = config.threads > 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.replicas);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(config.replicas);
  auto worker = [&]() {
    for (std::size_t r = next++; r < config.replicas; r = next++) {
      try {
        res.replicas[r] = run_replica(config, instance, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  double sum = 0.0, sq = 0.0, reg = 0.0;
  for (const auto& r : res.replicas) {
    sum += r.final_ratio();
    sq += r.final_ratio() * r.final_ratio();
    reg += r.average_regret();
  }
  const double k = static_cast<double>(res.replicas.size());
  res.mean_final_ratio = sum / k;
  res.std_final_ratio = std::sqrt(std::max(0.0, sq / k - res.mean_final_ratio * res.mean_final_ratio));
  res.mean_average_regret = reg / k;

  res.metadata.push_back({"algorithm", algorithm_name(config.algorithm)});
  res.metadata.push_back({"instance", instance_name(config.instance)});
  for (const auto& kv : config.resolved) res.metadata.push_back({"config." + kv.first, kv.second});
  for (const auto& kv : instance.metadata) res.metadata.push_back(kv);
  if (!res.replicas.empty()) {
    for (const auto& kv : res.replicas.front().algorithm_metadata) res.metadata.push_back({"engine." + kv.first, kv.second});
  }
  res.metadata.push_back({"hindsight_mode", config.hindsight == HindsightMode::kLattice ? "lattice" : "best-of"});
  res.metadata.push_back({"ratio_zero_rule", "comparator sum 0 -> ratio 1, row flagged"});
  res.metadata.push_back({"mean_final_ratio", fmt(res.mean_final_ratio)});
  res.metadata.push_back({"std_final_ratio", fmt(res.std_final_ratio)});
  res.metadata.push_back({"mean_average_regret", fmt(res.mean_average_regret)});
  return res;
}

std::string resolve_output_dir(const ExperimentConfig& config) {
  const char* env = std::getenv(kOutputDirEnv);
  if (env != nullptr && *env != '\0') return env;
  return config.out_dir;
}

}  // namespace odrs

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


// Command-line front end: run, verify, gen-graph, hindsight.
//
// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "odrs/config.hpp"
#include "odrs/experiment.hpp"
#include "odrs/hindsight.hpp"
#include "odrs/instances.hpp"
#include "odrs/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct KeyFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
};

void add_key_flags(CLI::App* cmd, KeyFlags& flags) {
  cmd->add_option("--config", flags.config_file, "key = value file; flags override it");
  for (const auto& key : odrs::config_keys()) {
    std::string& slot = flags.values[key.name];
    cmd->add_option(std::string("--") + key.name, slot, std::string(key.help) + " [" + key.default_value + "]");
  }
}

odrs::ExperimentConfig resolve(CLI::App* cmd, const KeyFlags& flags) {
  odrs::ConfigMap m;
  if (!flags.config_file.empty()) m = odrs::load_config_file(flags.config_file);
  for (const auto& [k, v] : flags.values) {
    if (cmd->count(std::string("--") + k) > 0) m[k] = v;
  }
  return odrs::ExperimentConfig::from_map(m);
}

int cmd_run(const odrs::ExperimentConfig& cfg) {
  const auto result = odrs::run_experiment(cfg);
  const auto paths = odrs::write_outputs(cfg, result);
  for (const auto& r : result.replicas) {
    std::printf("replica %zu: final_ratio=%.6f cum_reward=%.6g comparator=%.6g (%s) regret/T=%.6g\n", r.replica,
                r.final_ratio(), r.cum_reward(), r.comparator(), r.hindsight.method.c_str(), r.average_regret());
  }
  std::printf("mean final ratio %.6f (std %.6f) over %zu replicas\n", result.mean_final_ratio,
              result.std_final_ratio, result.replicas.size());
  for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
  return kOk;
}

int cmd_hindsight(const odrs::ExperimentConfig& cfg) {
  const odrs::Instance inst = odrs::prepare_instance(cfg);
  odrs::InstanceStream stream(cfg, inst, odrs::mix_seed(cfg.seed, 0x73747265616d));
  std::vector<odrs::FunctionPtr> fs;
  for (std::size_t t = 0; t < cfg.horizon; ++t) fs.push_back(stream.next());
  odrs::HindsightOptions opt;
  opt.mode = cfg.hindsight;
  opt.grid = cfg.hindsight_grid;
  opt.fw_levels = cfg.hindsight_fw_levels;
  opt.restarts = cfg.hindsight_restarts;
  opt.seed = cfg.seed;
  const auto res = odrs::compute_hindsight(fs, inst.body, opt);
  std::printf("best %s value=%.17g\n", res.method.c_str(), res.value);
  for (const auto& [m, v] : res.per_method) std::printf("  %s %.17g\n", m.c_str(), v);
  std::printf("point %s\n", odrs::to_string(res.point).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online DR-submodular maximization toolkit"};
  app.require_subcommand(1);

  KeyFlags run_flags, hind_flags;
  CLI::App* run = app.add_subcommand("run", "run an experiment and write CSV/JSON");
  add_key_flags(run, run_flags);
  CLI::App* hind = app.add_subcommand("hindsight", "best fixed point for replica 0's stream");
  add_key_flags(hind, hind_flags);

  std::string suite = "all";
  bool canary = false;
  std::uint64_t verify_seed = odrs::VerifyOptions{}.seed;
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", suite, "core | lift | mfw | hypercube | instances | all");
  verify->add_option("--seed", verify_seed, "suite seed");
  verify->add_flag("--canary-double-step", canary, "use eta = 2/L in the down-closed engine (must fail)");

  std::size_t gn = 100;
  double gp = 0.1, glo = 1.0, ghi = 1.0;
  std::uint64_t gseed = 7;
  std::string gout;
  CLI::App* gen = app.add_subcommand("gen-graph", "write an Erdos-Renyi edge list");
  gen->add_option("--n", gn, "vertices");
  gen->add_option("--edge_prob", gp, "edge probability");
  gen->add_option("--w_lo", glo, "lowest weight");
  gen->add_option("--w_hi", ghi, "highest weight");
  gen->add_option("--seed", gseed, "seed");
  gen->add_option("--out", gout, "output path (.gz compresses)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(resolve(run, run_flags));
    if (*hind) return cmd_hindsight(resolve(hind, hind_flags));
    if (*verify) {
      odrs::VerifyOptions opt;
      opt.seed = verify_seed;
      opt.canary_double_step = canary;
      const auto report = odrs::run_verify(suite, opt);
      for (const auto& c : report.checks) std::printf("%s\n", odrs::format_check(c).c_str());
      std::printf("%zu checks, %zu failed\n", report.checks.size(), report.failures());
      return report.passed() ? kOk : kVerifyFailed;
    }
    if (*gen) {
      if (!(gp >= 0.0 && gp <= 1.0) || glo < 0.0 || ghi < glo) throw odrs::ConfigError("bad generator parameters");
      const odrs::Graph g = odrs::gen_random_graph(gn, gp, glo, ghi, gseed);
      odrs::save_edge_list(g, gout);
      std::printf("wrote %s: %zu vertices, %zu edges\n", gout.c_str(), g.num_vertices(), g.num_edges());
      return kOk;
    }
  } catch (const odrs::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const odrs::EdgeListError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kIoError;
  } catch (const odrs::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kVerifyFailed;
  }
  return kOk;
}

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

// Experiment configuration: "key = value" files overridden by flags.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "odrs/body.hpp"
#include "odrs/linear_oracle.hpp"
#include "odrs/online.hpp"

namespace odrs {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Environment variable that replaces the configured output directory.
inline constexpr const char* kOutputDirEnv = "ODRS_OUTPUT_DIR";

struct ConfigKey {
  const char* name;
  const char* default_value;
  const char* help;
};

// Every recognized key with its default; flags mirror these names.
const std::vector<ConfigKey>& config_keys();

using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text, const std::string& origin = "<text>");
ConfigMap load_config_file(const std::string& path);

enum class Algorithm { kDownClosed, kGeneral, kHypercube, kDoublingDownClosed, kDoublingGeneral };
enum class InstanceKind { kRevenue, kQuadratic, kLinear, kZero };
enum class HindsightMode { kBestOf, kLattice };

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kDownClosed;
  std::string body = "budget";
  double budget = 1.0;
  double band_min = 0.1;
  double band_max = 1.0;
  std::string polytope;

  InstanceKind instance = InstanceKind::kRevenue;
  std::string graph_path;
  std::size_t n = 20;
  double edge_prob = 0.3;
  double w_lo = 1.0;
  double w_hi = 1.0;
  std::uint64_t graph_seed = 7;
  double p = 0.01;
  double p_original = 0.0001;
  std::size_t batch = 8;
  double density = 0.5;

  std::size_t horizon = 500;
  std::size_t levels = 0;
  std::size_t level_cap = 64;
  std::size_t resolution = 0;
  double epsilon = 0.0;
  double c0 = 16.0;
  double sigma = 0.0;
  OracleStrategy oracle = OracleStrategy::kLeader;
  double gradient_bound = 0.0;

  std::uint64_t seed = 1;
  std::size_t replicas = 5;
  std::size_t threads = 0;
  std::string out_dir = "results";
  std::string name = "run";
  bool write_csv = true;
  bool write_json = true;
  bool timing = false;

  HindsightMode hindsight = HindsightMode::kBestOf;
  std::size_t hindsight_grid = 0;
  std::size_t hindsight_fw_levels = 256;
  std::size_t hindsight_restarts = 32;

  // Resolved view of every key, for metadata.
  ConfigMap resolved;

  static ExperimentConfig from_map(const ConfigMap& overrides);
  ConvexBody make_body(std::size_t n) const;
  bool doubling() const;
};

std::string algorithm_name(Algorithm a);
std::string instance_name(InstanceKind k);

}  // namespace odrs

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


// Experiment runner: instance streams, engines, regret accounting and output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "odrs/body.hpp"
#include "odrs/config.hpp"
#include "odrs/function.hpp"
#include "odrs/hindsight.hpp"
#include "odrs/instances.hpp"
#include "odrs/online.hpp"

namespace odrs {

struct RoundRecord {
  std::size_t t = 0;
  double reward = 0.0;
  double cum_reward = 0.0;
  double comparator_cum = 0.0;
  double ratio = 0.0;
  double elapsed_ms = 0.0;
};

// Read-only data shared by every replica.
struct Instance {
  std::size_t n = 0;
  ConvexBody body = ConvexBody::hypercube(1);
  std::shared_ptr<const Graph> graph;
  Vector linear_weights;
  double gradient_bound = 0.0;
  std::string gradient_bound_source;
  Metadata metadata;
};

Instance prepare_instance(const ExperimentConfig& config);

// The round-t reward functions of one replica.
class InstanceStream {
 public:
  InstanceStream(const ExperimentConfig& config, const Instance& instance, std::uint64_t seed);
  FunctionPtr next();

 private:
  const ExperimentConfig& config_;
  const Instance& instance_;
  RngStream rng_;
  std::unique_ptr<BatchSampler> sampler_;
};

std::unique_ptr<OnlineAlgorithm> make_algorithm(const ExperimentConfig& config, const Instance& instance,
                                                std::uint64_t seed);

struct ReplicaResult {
  std::size_t replica = 0;
  std::uint64_t stream_seed = 0;
  std::uint64_t algorithm_seed = 0;
  std::vector<RoundRecord> rows;
  Metadata algorithm_metadata;
  HindsightResult hindsight;
  // Rows where the comparator sum was zero and the ratio was set to 1.
  std::size_t flagged_rows = 0;
  double seconds = 0.0;

  double final_ratio() const { return rows.empty() ? 1.0 : rows.back().ratio; }
  double cum_reward() const { return rows.empty() ? 0.0 : rows.back().cum_reward; }
  double comparator() const { return rows.empty() ? 0.0 : rows.back().comparator_cum; }
  // (comparator - cumulative reward) / T.
  double average_regret() const;
};

ReplicaResult run_replica(const ExperimentConfig& config, const Instance& instance, std::size_t replica);

struct ExperimentResult {
  Metadata metadata;
  std::vector<ReplicaResult> replicas;
  double mean_final_ratio = 0.0;
  double std_final_ratio = 0.0;
  double mean_average_regret = 0.0;
};

// Runs all replicas (in parallel when threads allow); writes nothing.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Output directory after the environment override.
std::string resolve_output_dir(const ExperimentConfig& config);

std::string format_csv(const std::vector<RoundRecord>& rows);
std::string format_json(const Metadata& metadata, const std::vector<RoundRecord>& rows);
// Per-round mean / std across replicas.
std::string format_aggregate_csv(const ExperimentResult& result);

// Per-replica CSV/JSON plus the aggregate file; returns the written paths.
// Throws IoError.
std::vector<std::string> write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace odrs

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

// Online linear optimization over a Region.
//
// Each round the oracle plays a feasible point and then receives a reward
// vector d; its payoff is <d, play>. Two strategies are provided:
//
//   ascent  projected online gradient ascent, step c / sqrt(t) with
//           c = D / G by default;
//   leader  follow the perturbed leader: linear_maximize of the cumulative
//           reward (divided by G) plus uniform noise on [0, width]^n,
//           width = sqrt(T) for a known horizon, sqrt(t) otherwise.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "odrs/body.hpp"
#include "odrs/online.hpp"
#include "odrs/rng.hpp"

namespace odrs {

enum class OracleStrategy { kAscent, kLeader };

std::string_view strategy_name(OracleStrategy s);
OracleStrategy parse_strategy(std::string_view s);

struct OracleConfig {
  OracleStrategy strategy = OracleStrategy::kAscent;
  double gradient_bound = 1.0;          // G; non-positive means 1
  std::optional<double> ascent_scale;   // c in c / sqrt(t); default D / G
  std::optional<double> noise_width;    // leader perturbation width; default by horizon
  std::size_t horizon = 0;              // 0 = unknown
  std::uint64_t seed = 0;
  std::optional<Vector> initial;        // ascent start; default region.initial_point()
};

class LinearOracle {
 public:
  LinearOracle(std::shared_ptr<const Region> region, OracleConfig config);

  // Current play. Repeated calls within a round return the same point.
  const Vector& play();
  void feedback(ConstSpan d);

  std::size_t rounds_completed() const { return t_; }
  const Region& region() const { return *region_; }
  const OracleConfig& config() const { return config_; }
  const Vector& cumulative_reward() const { return cum_d_; }
  double collected_reward() const { return collected_; }
  // max_x <sum d, x> - sum <d_t, play_t> over the rounds seen so far.
  double regret() const;

 private:
  Vector leader_point();

  std::shared_ptr<const Region> region_;
  OracleConfig config_;
  RngStream noise_;
  std::size_t t_ = 0;
  bool played_ = false;
  Vector state_;  // ascent iterate
  Vector current_;
  Vector cum_d_;
  double collected_ = 0.0;
  double g_ = 1.0;
};

// Regret of a play sequence against the best fixed point of `region`.
double olo_regret(const std::vector<Vector>& plays, const std::vector<Vector>& rewards, const Region& region);

}  // namespace odrs

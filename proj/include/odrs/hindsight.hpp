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


// Best fixed point in hindsight for a summed reward.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "odrs/body.hpp"
#include "odrs/config.hpp"
#include "odrs/function.hpp"

namespace odrs {

struct HindsightOptions {
  HindsightMode mode = HindsightMode::kBestOf;
  // Lattice steps per coordinate; 0 = the largest M <= 100 with (M+1)^n <= 1e6.
  std::size_t grid = 0;
  std::size_t fw_levels = 256;
  std::size_t restarts = 32;
  std::size_t ascent_iterations = 200;
  std::uint64_t seed = 0;
  // Extra feasible points to score, typically the learner's plays.
  std::vector<Vector> candidates;
};

struct HindsightResult {
  Vector point;
  double value = 0.0;
  std::string method;
  // Best value per method that ran.
  std::vector<std::pair<std::string, double>> per_method;
};

inline constexpr double kBruteForceBudget = 1e6;

// Largest M <= cap with (M + 1)^n <= kBruteForceBudget, 0 when none.
std::size_t auto_brute_force_grid(std::size_t n, std::size_t cap = 100);

HindsightResult compute_hindsight(const DRFunction& total, const ConvexBody& body, const HindsightOptions& options);
HindsightResult compute_hindsight(const std::vector<FunctionPtr>& functions, const ConvexBody& body,
                                  const HindsightOptions& options);

// Individual methods, exposed for cross-validation.
HindsightResult lattice_bruteforce(const DRFunction& f, const ConvexBody& body, std::size_t grid);
HindsightResult offline_frank_wolfe(const DRFunction& f, const ConvexBody& body, std::size_t levels);
HindsightResult projected_ascent(const DRFunction& f, const ConvexBody& body, std::size_t restarts,
                                 std::size_t iterations, std::uint64_t seed);

}  // namespace odrs

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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "odrs/vector_ops.hpp"

namespace odrs {

// splitmix64 finalizer over the pair; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

// Seeded pseudo-random stream. Identical seeds replay identical draws within
// one build. Streams are single-owner; derive a substream per consumer
// instead of sharing one across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  // A new stream whose seed depends only on (seed(), tag).
  RngStream substream(std::uint64_t tag) const { return RngStream(mix_seed(seed_, tag)); }

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  std::size_t index(std::size_t n);  // uniform on [0, n)
  bool bernoulli(double p);

  // Uniform point on the unit sphere / in the unit ball of R^n.
  Vector unit_sphere(std::size_t n);
  Vector unit_ball(std::size_t n);
  Vector uniform_cube(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace odrs

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

#include "odrs/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace odrs {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0)) {}

double RngStream::uniform() { return std::generate_canonical<double, 53>(engine_); }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal() { return normal_(engine_); }

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("RngStream::index: empty range");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

Vector RngStream::unit_sphere(std::size_t n) {
  Vector v(n);
  double s = 0.0;
  do {
    for (auto& x : v) x = normal();
    s = norm(v);
  } while (s == 0.0);
  for (auto& x : v) x /= s;
  return v;
}

Vector RngStream::unit_ball(std::size_t n) {
  Vector v = unit_sphere(n);
  const double r = std::pow(uniform(), 1.0 / static_cast<double>(n));
  for (auto& x : v) x *= r;
  return v;
}

Vector RngStream::uniform_cube(std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = uniform();
  return v;
}

}  // namespace odrs

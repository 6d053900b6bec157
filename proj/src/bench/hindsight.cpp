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


#include "odrs/hindsight.hpp"

#include <cmath>
#include <stdexcept>

#include "odrs/mfw.hpp"
#include "odrs/rng.hpp"

namespace odrs {
namespace {

void consider(HindsightResult& best, const DRFunction& f, const Vector& x, const std::string& method) {
  const double v = f.value(x);
  if (best.point.empty() || v > best.value) {
    best.point = x;
    best.value = v;
    best.method = method;
  }
}

void merge(HindsightResult& into, const HindsightResult& r) {
  if (r.point.empty()) return;
  into.per_method.emplace_back(r.method, r.value);
  if (into.point.empty() || r.value > into.value) {
    into.point = r.point;
    into.value = r.value;
    into.method = r.method;
  }
}

}  // namespace

std::size_t auto_brute_force_grid(std::size_t n, std::size_t cap) {
  std::size_t best = 0;
  for (std::size_t m = 1; m <= cap; ++m) {
    if (std::pow(static_cast<double>(m + 1), static_cast<double>(n)) > kBruteForceBudget) break;
    best = m;
  }
  return best;
}

HindsightResult lattice_bruteforce(const DRFunction& f, const ConvexBody& body, std::size_t grid) {
  const std::size_t n = f.dimension();
  require_dimension(n, body.dimension(), "lattice_bruteforce");
  if (grid == 0) throw std::invalid_argument("lattice_bruteforce: grid must be positive");
  if (std::pow(static_cast<double>(grid + 1), static_cast<double>(n)) > 1e8) {
    throw std::invalid_argument("lattice_bruteforce: lattice too large");
  }
  HindsightResult out;
  std::vector<std::size_t> digits(n, 0);
  Vector x(n, 0.0);
  const double step = 1.0 / static_cast<double>(grid);
  while (true) {
    if (body.contains(x)) consider(out, f, x, "lattice");
    std::size_t i = 0;
    while (i < n && digits[i] == grid) {
      digits[i] = 0;
      x[i] = 0.0;
      ++i;
    }
    if (i == n) break;
    ++digits[i];
    x[i] = digits[i] == grid ? 1.0 : static_cast<double>(digits[i]) * step;
  }
  out.method = "lattice";
  return out;
}

HindsightResult offline_frank_wolfe(const DRFunction& f, const ConvexBody& body, std::size_t levels) {
  const std::size_t n = f.dimension();
  if (levels == 0) throw std::invalid_argument("offline_frank_wolfe: levels must be positive");
  HindsightResult out;
  const double step = 1.0 / static_cast<double>(levels);
  if (body.down_closed()) {
    // Measured continuous greedy: x += step * v o (1 - x).
    Vector x(n, 0.0);
    for (std::size_t l = 0; l < levels; ++l) {
      Vector g = f.gradient(x);
      for (std::size_t i = 0; i < n; ++i) g[i] *= 1.0 - x[i];
      const Vector v = body.linear_maximize(g);
      for (std::size_t i = 0; i < n; ++i) x[i] += step * v[i] * (1.0 - x[i]);
    }
    consider(out, f, x, "offline-fw");
    // Plain continuous greedy x += step * v, the better choice on monotone parts.
    Vector y(n, 0.0);
    for (std::size_t l = 0; l < levels; ++l) {
      const Vector v = body.linear_maximize(f.gradient(y));
      axpy(step, v, y);
    }
    y = clamp_unit(y);
    if (body.contains(y)) consider(out, f, y, "offline-fw");
  } else {
    const StepSchedule s = StepSchedule::harmonic(levels);
    Vector x = body.min_inf_norm_point();
    for (std::size_t l = 1; l <= levels; ++l) {
      const Vector v = body.linear_maximize(f.gradient(x));
      const double eta = s.eta(l);
      for (std::size_t i = 0; i < n; ++i) x[i] = (1.0 - eta) * x[i] + eta * v[i];
    }
    consider(out, f, x, "offline-fw");
  }
  out.method = "offline-fw";
  return out;
}

HindsightResult projected_ascent(const DRFunction& f, const ConvexBody& body, std::size_t restarts,
                                 std::size_t iterations, std::uint64_t seed) {
  const std::size_t n = f.dimension();
  HindsightResult out;
  RngStream rng(mix_seed(seed, 0x706761));
  for (std::size_t r = 0; r < restarts; ++r) {
    Vector x = r == 0 ? body.initial_point() : body.project(rng.uniform_cube(n));
    double fx = f.value(x);
    double step = 1.0;
    for (std::size_t it = 0; it < iterations; ++it) {
      const Vector g = f.gradient(x);
      if (norm(g) == 0.0) break;
      bool moved = false;
      for (int halvings = 0; halvings < 40; ++halvings) {
        Vector y = x;
        axpy(step, g, y);
        y = body.project(y);
        const double fy = f.value(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          moved = true;
          step *= 1.5;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    consider(out, f, x, "gradient-ascent");
  }
  out.method = "gradient-ascent";
  return out;
}

HindsightResult compute_hindsight(const DRFunction& total, const ConvexBody& body,
                                  const HindsightOptions& options) {
  require_dimension(total.dimension(), body.dimension(), "compute_hindsight");
  HindsightResult best;
  const std::size_t n = total.dimension();
  if (options.mode == HindsightMode::kLattice) {
    const std::size_t grid = options.grid == 0 ? auto_brute_force_grid(n) : options.grid;
    if (grid == 0) throw std::invalid_argument("compute_hindsight: lattice too large for brute force");
    merge(best, lattice_bruteforce(total, body, grid));
    return best;
  }
  const std::size_t grid = options.grid == 0 ? auto_brute_force_grid(n) : options.grid;
  if (grid > 0 && std::pow(static_cast<double>(grid + 1), static_cast<double>(n)) <= kBruteForceBudget) {
    merge(best, lattice_bruteforce(total, body, grid));
  }
  if (options.fw_levels > 0) merge(best, offline_frank_wolfe(total, body, options.fw_levels));
  if (options.restarts > 0) {
    merge(best, projected_ascent(total, body, options.restarts, options.ascent_iterations, options.seed));
  }
  if (!options.candidates.empty()) {
    HindsightResult played;
    for (const Vector& x : options.candidates) consider(played, total, x, "played");
    played.method = "played";
    merge(best, played);
  }
  if (best.point.empty()) throw std::invalid_argument("compute_hindsight: no method ran");
  return best;
}

HindsightResult compute_hindsight(const std::vector<FunctionPtr>& functions, const ConvexBody& body,
                                  const HindsightOptions& options) {
  if (functions.empty()) throw std::invalid_argument("compute_hindsight: empty function list");
  FunctionAccumulator acc(functions.front()->dimension());
  for (const auto& f : functions) acc.add(f);
  return compute_hindsight(acc, body, options);
}

}  // namespace odrs

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

#include "odrs/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odrs {
namespace {

// y uniform in the cube, x = y + u (1 - y) so that y <= x.
std::pair<Vector, Vector> ordered_pair(std::size_t n, RngStream& rng) {
  Vector y = rng.uniform_cube(n);
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] + rng.uniform() * (1.0 - y[i]);
  return {std::move(x), std::move(y)};
}

}  // namespace

DrReport dr_check(const DRFunction& f, std::size_t trials, RngStream& rng) {
  const std::size_t n = f.dimension();
  DrReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    auto [x, y] = ordered_pair(n, rng);
    const std::size_t i = rng.index(n);
    const double alpha = rng.uniform() * (1.0 - x[i]);
    Vector xa = x, ya = y;
    xa[i] += alpha;
    ya[i] += alpha;
    const double gain_x = f.value(xa) - f.value(x);
    const double gain_y = f.value(ya) - f.value(y);
    rep.value_violation = std::max(rep.value_violation, gain_x - gain_y);
    const Vector gx = f.gradient(x), gy = f.gradient(y);
    for (std::size_t k = 0; k < n; ++k) rep.gradient_violation = std::max(rep.gradient_violation, gx[k] - gy[k]);
  }
  return rep;
}

double grad_check(const DRFunction& f, ConstSpan x, double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) throw std::invalid_argument("grad_check: h must lie in [1e-6, 1e-3]");
  const std::size_t n = f.dimension();
  require_dimension(n, x.size(), "grad_check");
  for (double v : x) {
    if (v < h || v > 1.0 - h) throw std::invalid_argument("grad_check: x must be interior");
  }
  const Vector g = f.gradient(x);
  const double scale = std::max(norm_inf(g), 1e-8);
  Vector p(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = x[i] + h;
    const double up = f.value(p);
    p[i] = x[i] - h;
    const double down = f.value(p);
    p[i] = x[i];
    worst = std::max(worst, std::fabs((up - down) / (2.0 * h) - g[i]) / scale);
  }
  return worst;
}

SmoothedEstimate smoothed_value_and_gradient(const DRFunction& f, ConstSpan x, double delta,
                                             std::size_t samples, RngStream& rng) {
  if (!(delta > 0.0)) throw std::invalid_argument("smoothing: delta must be positive");
  if (samples == 0) throw std::invalid_argument("smoothing: samples must be >= 1");
  const std::size_t n = f.dimension();
  require_dimension(n, x.size(), "smoothed_value_and_gradient");
  for (double v : x) {
    if (v < delta || v > 1.0 - delta) {
      throw std::invalid_argument("smoothing: x must lie in [delta, 1 - delta]^n");
    }
  }
  SmoothedEstimate est;
  est.gradient.assign(n, 0.0);
  Vector p(n);
  const double dn = static_cast<double>(n);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector r = rng.unit_ball(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + delta * r[i];
    est.value += f.value(p);

    const Vector u = rng.unit_sphere(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + delta * u[i];
    const double plus = f.value(p);
    for (std::size_t i = 0; i < n; ++i) p[i] = x[i] - delta * u[i];
    const double minus = f.value(p);
    axpy(dn * (plus - minus) / (2.0 * delta), u, est.gradient);
  }
  const double inv = 1.0 / static_cast<double>(samples);
  est.value *= inv;
  for (double& v : est.gradient) v *= inv;
  return est;
}

PropertyReport concavity_check(const DRFunction& f, std::size_t trials, RngStream& rng) {
  PropertyReport rep{"concavity along non-negative directions", trials, 0.0, kDrTol};
  const std::size_t n = f.dimension();
  for (std::size_t t = 0; t < trials; ++t) {
    auto [x, y] = ordered_pair(n, rng);
    const double bound = f.value(y) + dot(f.gradient(y), subtract(x, y));
    rep.max_violation = std::max(rep.max_violation, f.value(x) - bound);
  }
  return rep;
}

PropertyReport join_meet_check(const DRFunction& f, std::size_t trials, RngStream& rng) {
  PropertyReport rep{"gradient bounds join plus meet", trials, 0.0, kDrTol};
  const std::size_t n = f.dimension();
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector x = rng.uniform_cube(n), y = rng.uniform_cube(n);
    const double lhs = dot(f.gradient(x), subtract(y, x));
    const double rhs = f.value(vee(x, y)) + f.value(wedge(x, y)) - 2.0 * f.value(x);
    rep.max_violation = std::max(rep.max_violation, rhs - lhs);
  }
  return rep;
}

PropertyReport join_lower_bound_check(const DRFunction& f, std::size_t trials, RngStream& rng) {
  PropertyReport rep{"join lower bound", trials, 0.0, kDrTol};
  const std::size_t n = f.dimension();
  for (std::size_t t = 0; t < trials; ++t) {
    // Mix in small-norm x so the bound is not trivially loose.
    Vector x = rng.uniform_cube(n);
    const double shrink = rng.uniform();
    for (double& v : x) v *= shrink;
    const Vector y = rng.uniform_cube(n);
    const double need = (1.0 - norm_inf(x)) * f.value(y);
    rep.max_violation = std::max(rep.max_violation, need - f.value(vee(x, y)));
  }
  return rep;
}

}  // namespace odrs

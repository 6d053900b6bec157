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

#include <cmath>
#include <string>

#include "odrs/lift.hpp"

namespace odrs {

RoundingResult caratheodory_round(const LiftedBody& body, ConstSpan y, double eps, double c0, RngStream& rng) {
  if (!(eps > 0.0)) throw std::invalid_argument("caratheodory_round: eps must be positive");
  if (!(c0 > 0.0)) throw std::invalid_argument("caratheodory_round: c0 must be positive");
  const std::size_t d = body.dimension();
  require_dimension(d, y.size(), "caratheodory_round");
  if (!body.lattice().is_staircase(y, 1e-9)) {
    throw LatticeError("caratheodory_round: input violates the staircase inequalities");
  }
  const auto k_max = static_cast<std::size_t>(std::ceil(c0 / (eps * eps)));

  RoundingResult res;
  Vector z(d, 0.0), w(d);
  // Step k picks the vertex that makes the running average closest to y:
  // maximize <(k + 1) y - k z - 1/2, v> over binary codes v.
  for (std::size_t k = 0; k < k_max; ++k) {
    const double kk = static_cast<double>(k);
    for (std::size_t i = 0; i < d; ++i) w[i] = (kk + 1.0) * y[i] - kk * z[i] - 0.5;
    auto levels = body.best_levels(w);
    const Vector v = body.lattice().lift_levels(levels);
    for (std::size_t i = 0; i < d; ++i) z[i] = (kk * z[i] + v[i]) / (kk + 1.0);
    res.vertices.push_back(std::move(levels));
    res.gap = distance(y, z);
    if (res.gap <= eps) break;
  }
  if (res.gap > eps) {
    throw RoundingError("caratheodory_round: gap " + std::to_string(res.gap) + " exceeds eps " + std::to_string(eps) +
                            " after " + std::to_string(k_max) + " vertices",
                        res.gap);
  }
  res.mean = std::move(z);
  res.chosen = rng.index(res.vertices.size());
  return res;
}

}  // namespace odrs

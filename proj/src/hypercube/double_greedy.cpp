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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "odrs/hypercube.hpp"

namespace odrs {

Subset double_greedy(const SetFunction& f, RngStream& rng, bool require_nonnegative) {
  std::vector<std::size_t> order(f.ground_size());
  for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
  return double_greedy(f, rng, order, require_nonnegative);
}

Subset double_greedy(const SetFunction& f, RngStream& rng, const std::vector<std::size_t>& order,
                     bool require_nonnegative) {
  const std::size_t g = f.ground_size();
  if (order.size() != g) throw std::invalid_argument("double_greedy: order must list every element once");
  std::vector<std::uint8_t> seen(g, 0);
  for (std::size_t e : order) {
    if (e >= g || seen[e]) throw std::invalid_argument("double_greedy: order must list every element once");
    seen[e] = 1;
  }
  // Rounding in long sums can push exact zeros slightly below 0.
  double scale = 1.0;
  auto eval = [&](const Subset& s) {
    const double v = f.value(s);
    scale = std::max(scale, std::fabs(v));
    if (require_nonnegative && v < -1e-9 * scale) {
      throw std::domain_error("double_greedy: negative set function value " + std::to_string(v));
    }
    return v;
  };
  Subset a(g, 0), b(g, 1);
  double fa = eval(a), fb = eval(b);
  for (std::size_t e : order) {
    a[e] = 1;
    const double fa_e = eval(a);
    a[e] = 0;
    b[e] = 0;
    const double fb_e = eval(b);
    b[e] = 1;
    const double gain_add = std::max(fa_e - fa, 0.0);
    const double gain_drop = std::max(fb_e - fb, 0.0);
    const double total = gain_add + gain_drop;
    const bool include = total <= 0.0 || rng.uniform() * total < gain_add;
    if (include) {
      a[e] = 1;
      fa = fa_e;
    } else {
      b[e] = 0;
      fb = fb_e;
    }
  }
  return a;
}

BaselineDiscreteOracle::BaselineDiscreteOracle(BinaryLattice lattice, std::uint64_t seed)
    : lattice_(lattice), rng_(seed), sum_(std::make_shared<FunctionAccumulator>(lattice.n())),
      current_(lattice.ground_size(), 0) {}

const Subset& BaselineDiscreteOracle::play() {
  played_ = true;
  return current_;
}

void BaselineDiscreteOracle::feedback(const SetFunctionView& ft) {
  if (!played_) throw ProtocolError("BaselineDiscreteOracle: feedback without a preceding play");
  if (ft.ground_size() != lattice_.ground_size()) {
    throw DimensionError(lattice_.ground_size(), ft.ground_size(), "BaselineDiscreteOracle::feedback");
  }
  sum_->add(ft.function());
  ++t_;
  RngStream round = rng_.substream(t_);
  current_ = double_greedy(SetFunctionView(sum_, lattice_), round);
  played_ = false;
}

}  // namespace odrs

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

#include "odrs/lift.hpp"

namespace odrs {
namespace {

OracleConfig inner_config(const LiftedBody& body, OracleConfig cfg) {
  // The lifted reward a_i / M has norm at most |a| / sqrt(M).
  cfg.gradient_bound = (cfg.gradient_bound > 0.0 ? cfg.gradient_bound : 1.0) /
                       std::sqrt(static_cast<double>(body.lattice().m()));
  cfg.initial = body.initial_point();
  return cfg;
}

std::shared_ptr<const Region> checked(const std::shared_ptr<const LiftedBody>& body) {
  if (!body) throw std::invalid_argument("VeeOracle: null body");
  return body;
}

}  // namespace

VeeOracle::VeeOracle(std::shared_ptr<const LiftedBody> body, VeeConfig config)
    : body_(std::move(body)),
      config_(std::move(config)),
      inner_(checked(body_), inner_config(*body_, config_.inner)),
      round_rng_(mix_seed(config_.inner.seed, 0x726f756e64ULL)) {
  if (body_->lattice().m() != config_.m) throw std::invalid_argument("VeeOracle: lattice resolution mismatch");
  x_.assign(body_->lattice().n(), 0.0);
}

const Vector& VeeOracle::play() {
  played_ = true;
  return x_;
}

double VeeOracle::feedback(ConstSpan c, ConstSpan a) {
  if (!played_) throw ProtocolError("VeeOracle: feedback without a preceding play");
  const UnaryLattice& lat = body_->lattice();
  require_dimension(lat.n(), c.size(), "VeeOracle::feedback c");
  require_dimension(lat.n(), a.size(), "VeeOracle::feedback a");
  const double realized = dot(a, vee(c, x_));

  const Vector c_bits = lat.lift(lat.snap(c));
  Vector reward = lat.lift_reward(a);
  for (std::size_t k = 0; k < reward.size(); ++k) reward[k] *= 1.0 - c_bits[k];
  inner_.play();
  inner_.feedback(reward);
  const Vector& y = inner_.play();

  if (y != cached_y_ || cached_.vertices.empty()) {
    cached_ = caratheodory_round(*body_, y, config_.epsilon, config_.c0, round_rng_);
    cached_y_ = y;
  } else {
    cached_.chosen = round_rng_.index(cached_.vertices.size());
  }
  last_gap_ = cached_.gap;
  last_k_ = cached_.vertices.size();
  x_ = lat.from_levels(cached_.vertices[cached_.chosen]);
  ++t_;
  played_ = false;
  return realized;
}

}  // namespace odrs

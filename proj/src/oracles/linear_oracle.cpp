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

#include "odrs/linear_oracle.hpp"

#include <cmath>
#include <string>

namespace odrs {

std::string_view strategy_name(OracleStrategy s) {
  return s == OracleStrategy::kAscent ? "ascent" : "leader";
}

OracleStrategy parse_strategy(std::string_view s) {
  if (s == "ascent" || s == "gradient") return OracleStrategy::kAscent;
  if (s == "leader" || s == "ftpl") return OracleStrategy::kLeader;
  throw std::invalid_argument("unknown oracle strategy '" + std::string(s) + "'");
}

LinearOracle::LinearOracle(std::shared_ptr<const Region> region, OracleConfig config)
    : region_(std::move(region)), config_(std::move(config)), noise_(config_.seed) {
  if (!region_) throw std::invalid_argument("LinearOracle: null region");
  const std::size_t n = region_->dimension();
  g_ = config_.gradient_bound > 0.0 ? config_.gradient_bound : 1.0;
  cum_d_.assign(n, 0.0);
  if (config_.strategy == OracleStrategy::kAscent) {
    state_ = config_.initial ? *config_.initial : region_->initial_point();
    require_dimension(n, state_.size(), "LinearOracle initial point");
    if (!region_->contains(state_)) throw std::invalid_argument("LinearOracle: infeasible initial point");
  }
}

Vector LinearOracle::leader_point() {
  const std::size_t n = region_->dimension();
  double width;
  if (config_.noise_width) {
    width = *config_.noise_width;
  } else if (config_.horizon > 0) {
    width = std::sqrt(static_cast<double>(config_.horizon));
  } else {
    width = std::sqrt(static_cast<double>(t_ + 1));
  }
  Vector w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = cum_d_[i] / g_;
    if (width > 0.0) w[i] += width * noise_.uniform();
  }
  return region_->linear_maximize(w);
}

const Vector& LinearOracle::play() {
  if (played_) return current_;
  if (config_.strategy == OracleStrategy::kAscent) {
    current_ = state_;
  } else {
    current_ = leader_point();
  }
  played_ = true;
  return current_;
}

void LinearOracle::feedback(ConstSpan d) {
  if (!played_) throw ProtocolError("LinearOracle: feedback without a preceding play");
  require_dimension(region_->dimension(), d.size(), "LinearOracle::feedback");
  ++t_;
  collected_ += dot(d, current_);
  axpy(1.0, d, cum_d_);
  if (config_.strategy == OracleStrategy::kAscent) {
    const double c = config_.ascent_scale ? *config_.ascent_scale : region_->diameter() / g_;
    const double eta = c / std::sqrt(static_cast<double>(t_));
    Vector next = state_;
    axpy(eta, d, next);
    state_ = region_->project(next);
  }
  played_ = false;
}

double LinearOracle::regret() const {
  const Vector best = region_->linear_maximize(cum_d_);
  return dot(cum_d_, best) - collected_;
}

double olo_regret(const std::vector<Vector>& plays, const std::vector<Vector>& rewards, const Region& region) {
  if (plays.size() != rewards.size()) throw std::invalid_argument("olo_regret: length mismatch");
  const std::size_t n = region.dimension();
  Vector total(n, 0.0);
  double got = 0.0;
  for (std::size_t t = 0; t < plays.size(); ++t) {
    require_dimension(n, plays[t].size(), "olo_regret play");
    require_dimension(n, rewards[t].size(), "olo_regret reward");
    axpy(1.0, rewards[t], total);
    got += dot(rewards[t], plays[t]);
  }
  return dot(total, region.linear_maximize(total)) - got;
}

}  // namespace odrs

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

#include <stdexcept>
#include <string>

#include "odrs/hypercube.hpp"
#include "odrs/linear_oracle.hpp"

namespace odrs {
namespace {

std::size_t resolve_resolution(const HypercubeConfig& c) {
  if (c.resolution > 0) return c.resolution;
  if (c.horizon == 0) throw std::invalid_argument("HypercubeLearner: need a horizon or an explicit M");
  return default_binary_resolution(c.horizon);
}

}  // namespace

HypercubeLearner::HypercubeLearner(std::size_t n, HypercubeConfig config)
    : HypercubeLearner(n, config, nullptr) {}

HypercubeLearner::HypercubeLearner(std::size_t n, HypercubeConfig config, std::unique_ptr<DiscreteOracle> oracle)
    : config_(config), lattice_(n, resolve_resolution(config)), oracle_(std::move(oracle)) {
  if (!oracle_) oracle_ = std::make_unique<BaselineDiscreteOracle>(lattice_, config_.seed);
  if (oracle_->ground_size() != lattice_.ground_size()) {
    throw std::invalid_argument("HypercubeLearner: oracle ground set does not match the lattice");
  }
}

const Vector& HypercubeLearner::play() {
  if (!played_) {
    x_ = lattice_.unlift_clamped(oracle_->play());
    played_ = true;
  }
  return x_;
}

void HypercubeLearner::feedback(const FunctionPtr& f, RngStream& /*rng*/) {
  if (!played_) throw ProtocolError("HypercubeLearner: feedback without a preceding play");
  oracle_->feedback(SetFunctionView(f, lattice_));
  played_ = false;
}

Metadata HypercubeLearner::metadata() const {
  return {
      {"engine", name()},
      {"M", std::to_string(lattice_.m())},
      {"M_rule", config_.resolution > 0 ? "explicit" : "ceil(log2 T)"},
      {"ground_set", std::to_string(lattice_.ground_size())},
      {"discrete_oracle", oracle_->name()},
      {"initial_point", "0"},
      {"off_image_decoding", "block values capped at 1"},
  };
}

}  // namespace odrs

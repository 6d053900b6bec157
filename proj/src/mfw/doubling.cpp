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

#include "odrs/mfw.hpp"

namespace odrs {

DoublingRunner::DoublingRunner(std::size_t n, std::size_t level_cap, EngineFactory factory, std::string label)
    : n_(n), level_cap_(level_cap), factory_(std::move(factory)), label_(std::move(label)) {
  if (!factory_) throw std::invalid_argument("DoublingRunner: missing engine factory");
  start_phase(0);
}

void DoublingRunner::start_phase(std::size_t index) {
  phase_ = Phase{};
  phase_.index = index;
  phase_.first_round = std::size_t{1} << index;
  phase_.nominal_length = std::size_t{1} << index;
  phase_.length = phase_.nominal_length;
  phase_.levels = std::size_t{2} << index;
  if (level_cap_ > 0) phase_.levels = std::min(phase_.levels, level_cap_);
  engine_ = factory_(phase_);
  if (!engine_ || engine_->dimension() != n_) throw std::invalid_argument("DoublingRunner: bad engine from factory");
  ++phases_started_;
}

const Vector& DoublingRunner::play() {
  // Round t + 1 opens a new phase when it is a power of two.
  const std::size_t next = t_ + 1;
  if (next >= phase_.first_round + phase_.nominal_length) start_phase(phase_.index + 1);
  return engine_->play();
}

void DoublingRunner::feedback(const FunctionPtr& fp, RngStream& rng) {
  engine_->feedback(fp, rng);
  ++t_;
}

Metadata DoublingRunner::metadata() const {
  Metadata md = engine_->metadata();
  md.insert(md.begin(), {"engine", label_});
  for (auto& kv : md) {
    if (kv.first == "engine" && kv.second != label_) kv.first = "phase_engine";
    if (kv.first == "L") kv.first = "last_phase_L";
  }
  md.push_back({"doubling_phases", std::to_string(phases_started_)});
  md.push_back({"doubling_L_cap", std::to_string(level_cap_)});
  md.push_back({"doubling_phase_rule", "phase m covers rounds [2^m, 2^(m+1)-1], L = min(2^(m+1), cap)"});
  return md;
}

}  // namespace odrs

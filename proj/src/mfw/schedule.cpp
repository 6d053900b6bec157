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

#include "odrs/mfw.hpp"

namespace odrs {

double harmonic_number(std::size_t n) {
  double h = 0.0;
  // Smallest terms first for a tighter sum.
  for (std::size_t k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
  return h;
}

double default_rho(std::size_t level) {
  if (level == 0) throw std::invalid_argument("default_rho: levels start at 1");
  return 2.0 / std::pow(static_cast<double>(level) + 3.0, 2.0 / 3.0);
}

StepSchedule StepSchedule::uniform(std::size_t levels) {
  if (levels == 0) throw std::invalid_argument("StepSchedule: L must be >= 1");
  StepSchedule s;
  s.kind_ = ScheduleKind::kUniform;
  s.eta_.assign(levels, 1.0 / static_cast<double>(levels));
  return s;
}

StepSchedule StepSchedule::harmonic(std::size_t levels, double kappa) {
  if (levels == 0) throw std::invalid_argument("StepSchedule: L must be >= 1");
  StepSchedule s;
  s.kind_ = ScheduleKind::kHarmonic;
  const double h = harmonic_number(levels);
  s.eta_.resize(levels);
  for (std::size_t l = 1; l <= levels; ++l) s.eta_[l - 1] = kappa / (static_cast<double>(l) * h);
  return s;
}

StepSchedule StepSchedule::custom(Vector eta) {
  if (eta.empty()) throw std::invalid_argument("StepSchedule: L must be >= 1");
  for (double e : eta) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("StepSchedule: step sizes must be finite and >= 0");
  }
  StepSchedule s;
  s.kind_ = ScheduleKind::kCustom;
  s.eta_ = std::move(eta);
  return s;
}

double StepSchedule::rho(std::size_t level) const {
  if (!rho_.empty()) return rho_.at(level - 1);
  return default_rho(level);
}

void StepSchedule::set_rho(Vector rho) {
  if (rho.size() != eta_.size()) throw std::invalid_argument("StepSchedule: rho needs one entry per level");
  for (double r : rho) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("StepSchedule: rho must lie in (0, 1)");
  }
  rho_ = std::move(rho);
}

double StepSchedule::eta_sum() const {
  double s = 0.0;
  for (double e : eta_) s += e;
  return s;
}

double StepSchedule::survival(std::size_t level) const {
  double p = 1.0;
  for (std::size_t l = 1; l <= level; ++l) p *= 1.0 - eta(l);
  return p;
}

GradientAverager::GradientAverager(std::size_t n, std::function<double(std::size_t)> rho)
    : d_(n, 0.0), rho_(std::move(rho)) {}

void GradientAverager::reset() {
  std::fill(d_.begin(), d_.end(), 0.0);
  level_ = 0;
}

const Vector& GradientAverager::update(ConstSpan g) {
  require_dimension(d_.size(), g.size(), "GradientAverager::update");
  ++level_;
  const double r = rho_(level_);
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] = (1.0 - r) * d_[i] + r * g[i];
  return d_;
}

std::size_t default_levels_down_closed(std::size_t horizon, std::size_t cap) {
  const double l = std::ceil(std::pow(static_cast<double>(std::max<std::size_t>(horizon, 1)), 0.75) - 1e-12);
  auto levels = static_cast<std::size_t>(std::max(1.0, l));
  return cap > 0 ? std::min(levels, cap) : levels;
}

std::size_t default_levels_general(std::size_t horizon, std::size_t cap) {
  const std::size_t levels = std::max<std::size_t>(horizon, 1);
  return cap > 0 ? std::min(levels, cap) : levels;
}

std::vector<Phase> doubling_phases(std::size_t total_rounds, std::size_t level_cap) {
  std::vector<Phase> phases;
  std::size_t start = 1;
  for (std::size_t m = 0; start <= total_rounds; ++m) {
    Phase p;
    p.index = m;
    p.first_round = start;
    p.nominal_length = std::size_t{1} << m;
    p.length = std::min(p.nominal_length, total_rounds - start + 1);
    p.levels = std::size_t{2} << m;
    if (level_cap > 0) p.levels = std::min(p.levels, level_cap);
    phases.push_back(p);
    start += p.nominal_length;
  }
  return phases;
}

}  // namespace odrs

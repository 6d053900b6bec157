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
#include <sstream>
#include <stdexcept>

#include "odrs/mfw.hpp"

namespace odrs {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

StepSchedule make_schedule(const MfwConfig& cfg, std::size_t levels, bool harmonic) {
  StepSchedule s = cfg.eta ? StepSchedule::custom(*cfg.eta)
                           : (harmonic ? StepSchedule::harmonic(levels) : StepSchedule::uniform(levels));
  if (s.levels() != levels) throw std::invalid_argument("MetaFW: step-size override must have L entries");
  if (cfg.rho) s.set_rho(*cfg.rho);
  return s;
}

std::function<double(std::size_t)> rho_of(const StepSchedule& s) {
  return [s](std::size_t l) { return s.rho(l); };
}

void require_horizon(const MfwConfig& cfg) {
  if (cfg.horizon == 0) throw std::invalid_argument("MetaFW: horizon T must be positive");
}

std::size_t resolve_levels(const MfwConfig& cfg, bool general) {
  require_horizon(cfg);
  if (cfg.levels > 0) return cfg.levels;
  return general ? default_levels_general(cfg.horizon, cfg.level_cap)
                 : default_levels_down_closed(cfg.horizon, cfg.level_cap);
}

}  // namespace

DownClosedMetaFW::DownClosedMetaFW(ConvexBody body, MfwConfig config)
    : body_(std::move(body)),
      config_(std::move(config)),
      schedule_(make_schedule(config_, resolve_levels(config_, false), false)),
      averager_(body_.dimension(), rho_of(schedule_)) {
  if (!body_.down_closed()) {
    throw std::invalid_argument("down-closed engine needs a down-closed body, got " + body_.describe());
  }
  const std::size_t n = body_.dimension();
  m_ = config_.resolution > 0 ? config_.resolution : default_unary_resolution(config_.horizon, n);
  eps_ = config_.epsilon > 0.0 ? config_.epsilon : 1.0 / std::sqrt(static_cast<double>(config_.horizon));
  auto lifted = std::make_shared<const LiftedBody>(body_, m_);
  oracles_.reserve(schedule_.levels());
  for (std::size_t l = 1; l <= schedule_.levels(); ++l) {
    VeeConfig vc;
    vc.m = m_;
    vc.epsilon = eps_;
    vc.c0 = config_.c0;
    vc.inner = config_.oracle;
    vc.inner.horizon = config_.horizon;
    vc.inner.seed = mix_seed(config_.oracle.seed, l);
    oracles_.emplace_back(lifted, vc);
  }
}

const Vector& DownClosedMetaFW::play() {
  if (played_) return trace_.points.back();
  const std::size_t n = body_.dimension();
  trace_.points.assign(1, Vector(n, 0.0));
  for (std::size_t l = 1; l <= schedule_.levels(); ++l) {
    const Vector& x = trace_.points.back();
    const Vector& u = oracles_[l - 1].play();
    Vector next = x;
    const double eta = schedule_.eta(l);
    for (std::size_t i = 0; i < n; ++i) next[i] += eta * (std::max(x[i], u[i]) - x[i]);
    trace_.points.push_back(std::move(next));
  }
  if (!body_.contains(trace_.points.back())) {
    throw std::logic_error("down-closed engine produced an infeasible play " + to_string(trace_.points.back()));
  }
  played_ = true;
  return trace_.points.back();
}

void DownClosedMetaFW::feedback(const FunctionPtr& fp, RngStream& rng) {
  if (!played_) throw ProtocolError("DownClosedMetaFW: feedback without a preceding play");
  if (!fp) throw std::invalid_argument("DownClosedMetaFW: null function");
  const DRFunction& f = *fp;
  require_dimension(dimension(), f.dimension(), "DownClosedMetaFW::feedback");
  averager_.reset();
  for (std::size_t l = 1; l <= schedule_.levels(); ++l) {
    const Vector& x = trace_.points[l - 1];
    const Vector g = noisy_gradient(f, x, config_.sigma, rng);
    const Vector& d = averager_.update(g);
    oracles_[l - 1].feedback(x, d);
  }
  played_ = false;
}

Metadata DownClosedMetaFW::metadata() const {
  return {
      {"engine", name()},
      {"L", std::to_string(schedule_.levels())},
      {"L_cap", std::to_string(config_.level_cap)},
      {"M", std::to_string(m_)},
      {"epsilon", fmt(eps_)},
      {"caratheodory_c0", fmt(config_.c0)},
      {"eta_schedule", config_.eta ? "custom" : "uniform 1/L"},
      {"rho_schedule", config_.rho ? "custom" : "2/(l+3)^(2/3)"},
      {"oracle", std::string(strategy_name(config_.oracle.strategy))},
      {"oracle_G", fmt(config_.oracle.gradient_bound)},
      {"lifted_increments", std::to_string(oracles_.front().body().increments())},
      {"vee_initial_point", "0"},
  };
}

GeneralMetaFW::GeneralMetaFW(ConvexBody body, MfwConfig config)
    : body_(std::make_shared<const ConvexBody>(std::move(body))),
      config_(std::move(config)),
      schedule_(make_schedule(config_, resolve_levels(config_, true), true)),
      x0_(body_->min_inf_norm_point()),
      averager_(body_->dimension(), rho_of(schedule_)) {
  oracles_.reserve(schedule_.levels());
  for (std::size_t l = 1; l <= schedule_.levels(); ++l) {
    OracleConfig oc = config_.oracle;
    oc.horizon = config_.horizon;
    oc.seed = mix_seed(config_.oracle.seed, l);
    oc.initial = x0_;
    oracles_.emplace_back(body_, oc);
  }
}

const Vector& GeneralMetaFW::play() {
  if (played_) return trace_.points.back();
  const std::size_t n = body_->dimension();
  trace_.points.assign(1, x0_);
  for (std::size_t l = 1; l <= schedule_.levels(); ++l) {
    const Vector& x = trace_.points.back();
    const Vector& v = oracles_[l - 1].play();
    const double eta = schedule_.eta(l);
    Vector next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 - eta) * x[i] + eta * v[i];
    trace_.points.push_back(std::move(next));
  }
  if (schedule_.kind() != ScheduleKind::kCustom && !body_->contains(trace_.points.back())) {
    throw std::logic_error("general engine produced an infeasible play " + to_string(trace_.points.back()));
  }
  played_ = true;
  return trace_.points.back();
}

void GeneralMetaFW::feedback(const FunctionPtr& fp, RngStream& rng) {
  if (!played_) throw ProtocolError("GeneralMetaFW: feedback without a preceding play");
  if (!fp) throw std::invalid_argument("GeneralMetaFW: null function");
  const DRFunction& f = *fp;
  require_dimension(dimension(), f.dimension(), "GeneralMetaFW::feedback");
  averager_.reset();
  for (std::size_t l = 1; l <= schedule_.levels(); ++l) {
    const Vector g = noisy_gradient(f, trace_.points[l - 1], config_.sigma, rng);
    oracles_[l - 1].feedback(averager_.update(g));
  }
  played_ = false;
}

Metadata GeneralMetaFW::metadata() const {
  const double x0_inf = norm_inf(x0_);
  return {
      {"engine", name()},
      {"L", std::to_string(schedule_.levels())},
      {"L_cap", std::to_string(config_.level_cap)},
      {"kappa", fmt(kHarmonicKappa)},
      {"eta_schedule", config_.eta ? "custom" : "kappa/(l H_L)"},
      {"rho_schedule", config_.rho ? "custom" : "2/(l+3)^(2/3)"},
      {"oracle", std::string(strategy_name(config_.oracle.strategy))},
      {"oracle_G", fmt(config_.oracle.gradient_bound)},
      {"x0", to_string(x0_)},
      {"x0_inf_norm", fmt(x0_inf)},
      {"target_ratio", fmt((1.0 - x0_inf) / (3.0 * std::sqrt(3.0)))},
  };
}

}  // namespace odrs

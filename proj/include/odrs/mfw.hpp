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

// Meta-Frank-Wolfe engines.
//
// Each round runs L Frank-Wolfe levels whose directions come from L online
// oracles. After the round's function is revealed, stochastic gradients at
// the L level iterates are averaged with momentum weights rho_l and fed back
// to the oracles.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odrs/body.hpp"
#include "odrs/function.hpp"
#include "odrs/lift.hpp"
#include "odrs/linear_oracle.hpp"
#include "odrs/online.hpp"

namespace odrs {

inline const double kHarmonicKappa = 0.5 * std::log(3.0);

double harmonic_number(std::size_t n);
// 2 / (l + 3)^(2/3), l >= 1.
double default_rho(std::size_t level);

enum class ScheduleKind { kUniform, kHarmonic, kCustom };

class StepSchedule {
 public:
  // eta_l = 1 / L.
  static StepSchedule uniform(std::size_t levels);
  // eta_l = kappa / (l H_L).
  static StepSchedule harmonic(std::size_t levels, double kappa = kHarmonicKappa);
  static StepSchedule custom(Vector eta);

  std::size_t levels() const { return eta_.size(); }
  ScheduleKind kind() const { return kind_; }
  // 1-based level index.
  double eta(std::size_t level) const { return eta_.at(level - 1); }
  double rho(std::size_t level) const;
  double eta_sum() const;
  // prod_{l' <= l} (1 - eta_l').
  double survival(std::size_t level) const;
  const Vector& etas() const { return eta_; }
  void set_rho(Vector rho);

 private:
  ScheduleKind kind_ = ScheduleKind::kUniform;
  Vector eta_;
  Vector rho_;  // empty = default_rho
};

// d_l = (1 - rho_l) d_{l-1} + rho_l g_l with d_0 = 0 at every reset.
class GradientAverager {
 public:
  explicit GradientAverager(std::size_t n, std::function<double(std::size_t)> rho = default_rho);
  void reset();
  const Vector& update(ConstSpan g);
  const Vector& current() const { return d_; }
  std::size_t level() const { return level_; }

 private:
  Vector d_;
  std::size_t level_ = 0;
  std::function<double(std::size_t)> rho_;
};

struct MfwConfig {
  std::size_t levels = 0;       // L; 0 = auto from the horizon
  std::size_t level_cap = 64;
  std::size_t horizon = 0;      // T, required
  double sigma = 0.0;           // simulated gradient noise
  OracleConfig oracle;          // strategy, G and base seed of the inner oracles
  std::size_t resolution = 0;   // M of the unary lattice; 0 = auto
  double epsilon = 0.0;         // rounding accuracy; 0 = 1/sqrt(T)
  double c0 = 16.0;
  std::optional<Vector> eta;    // replaces the theoretical step sizes
  std::optional<Vector> rho;
};

std::size_t default_levels_down_closed(std::size_t horizon, std::size_t cap);
std::size_t default_levels_general(std::size_t horizon, std::size_t cap);

// Level iterates x_1 .. x_{L+1} of the most recent play.
struct LevelTrace {
  std::vector<Vector> points;
};

class DownClosedMetaFW final : public OnlineAlgorithm {
 public:
  DownClosedMetaFW(ConvexBody body, MfwConfig config);

  std::size_t dimension() const override { return body_.dimension(); }
  const Vector& play() override;
  void feedback(const FunctionPtr& f, RngStream& rng) override;
  std::string name() const override { return "down-closed"; }
  Metadata metadata() const override;

  const StepSchedule& schedule() const { return schedule_; }
  const LevelTrace& trace() const { return trace_; }
  const ConvexBody& body() const { return body_; }
  const std::vector<VeeOracle>& oracles() const { return oracles_; }
  std::size_t resolution() const { return m_; }
  double epsilon() const { return eps_; }

 private:
  ConvexBody body_;
  MfwConfig config_;
  StepSchedule schedule_;
  std::size_t m_ = 1;
  double eps_ = 0.0;
  std::vector<VeeOracle> oracles_;
  GradientAverager averager_;
  LevelTrace trace_;
  bool played_ = false;
};

class GeneralMetaFW final : public OnlineAlgorithm {
 public:
  GeneralMetaFW(ConvexBody body, MfwConfig config);

  std::size_t dimension() const override { return body_->dimension(); }
  const Vector& play() override;
  void feedback(const FunctionPtr& f, RngStream& rng) override;
  std::string name() const override { return "general"; }
  Metadata metadata() const override;

  const StepSchedule& schedule() const { return schedule_; }
  const LevelTrace& trace() const { return trace_; }
  const Vector& start() const { return x0_; }
  const std::vector<LinearOracle>& oracles() const { return oracles_; }
  const ConvexBody& body() const { return *body_; }

 private:
  std::shared_ptr<const ConvexBody> body_;
  MfwConfig config_;
  StepSchedule schedule_;
  Vector x0_;
  std::vector<LinearOracle> oracles_;
  GradientAverager averager_;
  LevelTrace trace_;
  bool played_ = false;
};

// Doubling-trick phases: phase m covers rounds [2^m, 2^(m+1) - 1] (1-based),
// truncated at T, with L = 2^(m+1) capped at `level_cap` (0 = no cap).
struct Phase {
  std::size_t index = 0;
  std::size_t first_round = 1;
  std::size_t length = 0;
  std::size_t nominal_length = 0;
  std::size_t levels = 0;
};

std::vector<Phase> doubling_phases(std::size_t total_rounds, std::size_t level_cap);

using EngineFactory = std::function<std::unique_ptr<OnlineAlgorithm>(const Phase&)>;

// Restarts a fresh engine at each phase; the horizon is never consulted.
class DoublingRunner final : public OnlineAlgorithm {
 public:
  DoublingRunner(std::size_t n, std::size_t level_cap, EngineFactory factory, std::string label);

  std::size_t dimension() const override { return n_; }
  const Vector& play() override;
  void feedback(const FunctionPtr& f, RngStream& rng) override;
  std::string name() const override { return label_; }
  Metadata metadata() const override;

  const Phase& phase() const { return phase_; }
  std::size_t rounds_completed() const { return t_; }

 private:
  void start_phase(std::size_t index);

  std::size_t n_;
  std::size_t level_cap_;
  EngineFactory factory_;
  std::string label_;
  Phase phase_;
  std::unique_ptr<OnlineAlgorithm> engine_;
  std::size_t t_ = 0;
  std::size_t phases_started_ = 0;
};

}  // namespace odrs

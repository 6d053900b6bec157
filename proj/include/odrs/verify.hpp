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


// Property suites behind the `verify` subcommand.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "odrs/mfw.hpp"

namespace odrs {

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;      // the measured quantity (violation, slack, count, ...)
  std::string relation;    // how value is judged, e.g. "<= 1e-08"
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20260101;
  // Deliberate bug: down-closed step sizes 2/L instead of 1/L.
  bool canary_double_step = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  std::size_t failures() const;
};

const std::vector<std::string>& verify_suite_names();

// `suite` is one of verify_suite_names() or "all"; throws ConfigError otherwise.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& options = {});

std::string format_check(const CheckResult& c);

// min over levels of (1 - |x_{l+1}|_inf) - prod_{l' <= l} (1 - eta_l') for
// the most recent play.
double down_closed_invariant_slack(const DownClosedMetaFW& engine);
// min over levels and coordinates of
// (1 - x_{l+1,i}) - prod_{l' <= l} (1 - eta_l') (1 - x_{1,i}).
double general_invariant_slack(const GeneralMetaFW& engine);

// Momentum averaging on a drifting sequence |a_l - a_{l-1}| = c / (l + s)
// observed with noise of total variance sigma^2, d_0 = 0, |a_0| = 1.
struct VarianceReductionResult {
  Vector empirical;  // E |a_l - d_l|^2 for l = 1..L (index l - 1)
  Vector bound;      // 2 Q / (l + s + 1)^(2/3)
  double q = 0.0;
  std::size_t first_level = 1;
  double worst_ratio = 0.0;  // max empirical / bound over checked levels
  bool passed() const { return worst_ratio <= 1.0; }
};
VarianceReductionResult variance_reduction_harness(double c, double sigma, double s, std::size_t levels,
                                                   std::size_t seeds, std::size_t dim, std::uint64_t seed,
                                                   std::size_t first_level = 5);

}  // namespace odrs

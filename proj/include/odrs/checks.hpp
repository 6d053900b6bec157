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

// Randomized correctness checkers for objectives.

#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "odrs/body.hpp"
#include "odrs/function.hpp"
#include "odrs/rng.hpp"

namespace odrs {

struct PropertyReport {
  std::string name;
  std::size_t trials = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_violation <= tolerance; }
};

struct DrReport {
  std::size_t trials = 0;
  double value_violation = 0.0;     // diminishing-returns inequality
  double gradient_violation = 0.0;  // antitone gradient
  double tolerance = kDrTol;
  bool passed() const { return value_violation <= tolerance && gradient_violation <= tolerance; }
};

DrReport dr_check(const DRFunction& f, std::size_t trials, RngStream& rng);

// Max over coordinates of |central difference - gradient|, relative to
// max(|gradient|_inf, 1e-8). Requires x in [h, 1-h]^n.
double grad_check(const DRFunction& f, ConstSpan x, double h);

struct SmoothedEstimate {
  double value = 0.0;
  Vector gradient;
};

// Monte-Carlo estimate of E_{r in unit ball} F(x + delta r) and of its
// gradient via the symmetric two-point sphere estimator
// (n / 2 delta) (F(x + delta u) - F(x - delta u)) u.
SmoothedEstimate smoothed_value_and_gradient(const DRFunction& f, ConstSpan x, double delta,
                                             std::size_t samples, RngStream& rng);

// F(x) <= F(y) + <grad F(y), x - y> for x >= y.
PropertyReport concavity_check(const DRFunction& f, std::size_t trials, RngStream& rng);
// <grad F(x), y - x> >= F(x v y) + F(x ^ y) - 2 F(x).
PropertyReport join_meet_check(const DRFunction& f, std::size_t trials, RngStream& rng);
// F(x v y) >= (1 - |x|_inf) F(y).
PropertyReport join_lower_bound_check(const DRFunction& f, std::size_t trials, RngStream& rng);

}  // namespace odrs

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

// Dense two-phase simplex for small linear programs
//
//   maximize  c^T x   subject to  A x <= b,  x >= 0.
//
// Only the half-space polytope body kind needs it; the structured kinds have
// closed-form or greedy oracles. Bland's rule keeps it cycle-free.

#pragma once

#include <vector>

#include "odrs/vector_ops.hpp"

namespace odrs::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  Vector x;
  double objective = 0.0;
};

Result maximize(const std::vector<Vector>& a, ConstSpan b, ConstSpan c);

}  // namespace odrs::lp

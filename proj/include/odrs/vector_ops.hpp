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

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace odrs {

using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;

// Thrown when two interacting vectors disagree on dimension.
class DimensionError : public std::invalid_argument {
 public:
  DimensionError(std::size_t expected, std::size_t got, const std::string& where);
};

void require_dimension(std::size_t expected, std::size_t got, const char* where);

double dot(ConstSpan a, ConstSpan b);
double squared_norm(ConstSpan a);
double norm(ConstSpan a);
double norm_inf(ConstSpan a);
double squared_distance(ConstSpan a, ConstSpan b);
double distance(ConstSpan a, ConstSpan b);

// y += alpha * x
void axpy(double alpha, ConstSpan x, std::span<double> y);

// Coordinate-wise maximum (the join) and minimum (the meet).
Vector vee(ConstSpan a, ConstSpan b);
Vector wedge(ConstSpan a, ConstSpan b);

Vector clamp_unit(ConstSpan a);
Vector add(ConstSpan a, ConstSpan b);
Vector subtract(ConstSpan a, ConstSpan b);
Vector scaled(ConstSpan a, double s);
Vector hadamard(ConstSpan a, ConstSpan b);
Vector basis(std::size_t n, std::size_t i);

bool all_finite(ConstSpan a);
bool leq(ConstSpan a, ConstSpan b, double tol = 0.0);
bool in_unit_cube(ConstSpan a, double tol = 0.0);

std::string to_string(ConstSpan a);

}  // namespace odrs

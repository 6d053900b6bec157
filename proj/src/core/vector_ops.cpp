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

#include "odrs/vector_ops.hpp"

#include <cmath>
#include <sstream>

#include "odrs/kernels.hpp"

namespace odrs {

DimensionError::DimensionError(std::size_t expected, std::size_t got, const std::string& where)
    : std::invalid_argument(where + ": dimension mismatch (expected " + std::to_string(expected) +
                            ", got " + std::to_string(got) + ")") {}

void require_dimension(std::size_t expected, std::size_t got, const char* where) {
  if (expected != got) throw DimensionError(expected, got, where);
}

double dot(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "dot");
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double squared_norm(ConstSpan a) { return kernels::active().dot(a.data(), a.data(), a.size()); }

double norm(ConstSpan a) { return std::sqrt(squared_norm(a)); }

double norm_inf(ConstSpan a) { return kernels::active().max_abs(a.data(), a.size()); }

double squared_distance(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "squared_distance");
  return kernels::active().squared_distance(a.data(), b.data(), a.size());
}

double distance(ConstSpan a, ConstSpan b) { return std::sqrt(squared_distance(a, b)); }

void axpy(double alpha, ConstSpan x, std::span<double> y) {
  require_dimension(y.size(), x.size(), "axpy");
  kernels::active().axpy(alpha, x.data(), y.data(), x.size());
}

Vector vee(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "vee");
  Vector out(a.size());
  kernels::active().vmax(a.data(), b.data(), out.data(), a.size());
  return out;
}

Vector wedge(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "wedge");
  Vector out(a.size());
  kernels::active().vmin(a.data(), b.data(), out.data(), a.size());
  return out;
}

Vector clamp_unit(ConstSpan a) {
  Vector out(a.size());
  kernels::active().clamp(a.data(), 0.0, 1.0, out.data(), a.size());
  return out;
}

Vector add(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "add");
  Vector out(a.begin(), a.end());
  kernels::active().axpy(1.0, b.data(), out.data(), out.size());
  return out;
}

Vector subtract(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(ConstSpan a, double s) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Vector hadamard(ConstSpan a, ConstSpan b) {
  require_dimension(a.size(), b.size(), "hadamard");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Vector basis(std::size_t n, std::size_t i) {
  Vector e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

bool all_finite(ConstSpan a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool leq(ConstSpan a, ConstSpan b, double tol) {
  require_dimension(a.size(), b.size(), "leq");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + tol) return false;
  }
  return true;
}

bool in_unit_cube(ConstSpan a, double tol) {
  for (double v : a) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
  }
  return true;
}

std::string to_string(ConstSpan a) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ", ";
    os << a[i];
  }
  os << ')';
  return os.str();
}

}  // namespace odrs

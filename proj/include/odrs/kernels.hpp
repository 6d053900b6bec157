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

// Dense double-precision vector kernels.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active table is chosen once at first use from the
// CPU feature bits; setting ODRS_FORCE_SCALAR=1 in the environment pins the
// scalar table. Reductions in the SIMD variant use four independent
// accumulators, so results agree with the scalar reference only up to
// rounding (the equivalence tests bound the difference).

#pragma once

#include <cstddef>
#include <string_view>

namespace odrs::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i (a[i] - b[i])^2
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = max(a[i], b[i])
  void (*vmax)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = min(a[i], b[i])
  void (*vmin)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = clamp(a[i], lo, hi)
  void (*clamp)(const double* a, double lo, double hi, double* out, std::size_t n);
  // max_i |a[i]|
  double (*max_abs)(const double* a, std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void vmax(const double* a, const double* b, double* out, std::size_t n);
void vmin(const double* a, const double* b, double* out, std::size_t n);
void clamp(const double* a, double lo, double hi, double* out, std::size_t n);
double max_abs(const double* a, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void vmax(const double* a, const double* b, double* out, std::size_t n);
void vmin(const double* a, const double* b, double* out, std::size_t n);
void clamp(const double* a, double lo, double hi, double* out, std::size_t n);
double max_abs(const double* a, std::size_t n);
}  // namespace avx2

// True when the running CPU (and the build) can execute the given table.
bool supported(Isa isa);

// Table for a specific ISA; throws std::runtime_error when unsupported.
const KernelTable& table(Isa isa);

// The dispatched table used by the rest of the library.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace odrs::kernels

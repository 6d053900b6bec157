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
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "odrs/kernels.hpp"
#include "odrs/rng.hpp"
#include "odrs/vector_ops.hpp"

using namespace odrs;
namespace k = odrs::kernels;

namespace {

std::vector<double> random_array(std::size_t n, RngStream& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

// Compares a table against the scalar reference on lengths that exercise
// the vector body and every tail length.
void compare_with_scalar(const k::KernelTable& t) {
  const auto& ref = k::table(k::Isa::kScalar);
  RngStream rng(314);
  for (std::size_t n = 0; n <= 67; ++n) {
    CAPTURE(n);
    const auto a = random_array(n, rng);
    const auto b = random_array(n, rng);
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) abs_sum += std::fabs(a[i] * b[i]);
    CHECK(std::fabs(t.dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= 1e-14 * (abs_sum + 1.0));
    CHECK(std::fabs(t.squared_distance(a.data(), b.data(), n) - ref.squared_distance(a.data(), b.data(), n)) <=
          1e-14 * (16.0 * static_cast<double>(n) + 1.0));
    CHECK(t.max_abs(a.data(), n) == ref.max_abs(a.data(), n));

    std::vector<double> y1 = b, y2 = b;
    t.axpy(0.37, a.data(), y1.data(), n);
    ref.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y1[i] - y2[i]) <= 1e-15 * 4.0);

    std::vector<double> o1(n), o2(n);
    t.vmax(a.data(), b.data(), o1.data(), n);
    ref.vmax(a.data(), b.data(), o2.data(), n);
    CHECK(o1 == o2);
    t.vmin(a.data(), b.data(), o1.data(), n);
    ref.vmin(a.data(), b.data(), o2.data(), n);
    CHECK(o1 == o2);
    t.clamp(a.data(), 0.0, 1.0, o1.data(), n);
    ref.clamp(a.data(), 0.0, 1.0, o2.data(), n);
    CHECK(o1 == o2);
  }
}

}  // namespace

TEST_CASE("kernel scalar reference") {
  const auto& s = k::table(k::Isa::kScalar);
  const double a[] = {1.0, -2.0, 3.0}, b[] = {4.0, 5.0, -6.0};
  CHECK(s.dot(a, b, 3) == 1.0 * 4.0 - 10.0 - 18.0);
  CHECK(s.squared_distance(a, b, 3) == 9.0 + 49.0 + 81.0);
  CHECK(s.max_abs(b, 3) == 6.0);
  double out[3];
  s.clamp(a, 0.0, 1.0, out, 3);
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 1.0);
  compare_with_scalar(s);
}

TEST_CASE("kernel avx2 matches scalar") {
  if (!k::supported(k::Isa::kAvx2)) {
    MESSAGE("AVX2 not available on this CPU; skipped");
    CHECK_THROWS(k::table(k::Isa::kAvx2));
    return;
  }
  compare_with_scalar(k::table(k::Isa::kAvx2));
}

TEST_CASE("kernel dispatch selects a supported table") {
  const auto& t = k::active();
  CHECK(k::supported(t.isa));
  const char* env = std::getenv("ODRS_FORCE_SCALAR");
  if (env != nullptr && std::string(env) == "1") CHECK(t.isa == k::Isa::kScalar);
  MESSAGE("active kernels: ", std::string(k::isa_name(t.isa)));
  compare_with_scalar(t);
  // The public vector ops route through the active table.
  const Vector a{1.0, 2.0, 3.0, 4.0, 5.0}, b{5.0, 4.0, 3.0, 2.0, 1.0};
  CHECK(dot(a, b) == 35.0);
  CHECK(vee(a, b) == Vector{5.0, 4.0, 3.0, 4.0, 5.0});
}

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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "odrs/kernels.hpp"

namespace odrs::kernels {
namespace {

constexpr KernelTable kScalarTable{Isa::kScalar,  scalar::dot,   scalar::squared_distance,
                                   scalar::axpy,  scalar::vmax,  scalar::vmin,
                                   scalar::clamp, scalar::max_abs};

constexpr KernelTable kAvx2Table{Isa::kAvx2,   avx2::dot,   avx2::squared_distance,
                                 avx2::axpy,   avx2::vmax,  avx2::vmin,
                                 avx2::clamp,  avx2::max_abs};

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool scalar_forced() {
  const char* env = std::getenv("ODRS_FORCE_SCALAR");
  return env != nullptr && std::string(env) != "0" && std::string(env) != "";
}

const KernelTable& select() {
  if (!scalar_forced() && cpu_has_avx2()) return kAvx2Table;
  return kScalarTable;
}

}  // namespace

bool supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw std::runtime_error("kernel ISA not supported on this CPU: " + std::string(isa_name(isa)));
  }
  return isa == Isa::kAvx2 ? kAvx2Table : kScalarTable;
}

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace odrs::kernels

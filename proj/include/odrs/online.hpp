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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "odrs/function.hpp"
#include "odrs/rng.hpp"

namespace odrs {

// Play/feedback alternation broken by the caller.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

// Play x^t, then observe F^t. Implementations must not look at F^t before
// play() has returned for the round.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::size_t dimension() const = 0;
  virtual const Vector& play() = 0;
  // Reveals F^t; gradient draws use `rng`.
  virtual void feedback(const FunctionPtr& f, RngStream& rng) = 0;
  virtual std::string name() const = 0;
  virtual Metadata metadata() const = 0;
};

}  // namespace odrs

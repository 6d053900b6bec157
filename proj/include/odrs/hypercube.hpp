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

// Binary-expansion lifting of the cube and the online learner built on it.
//
// Coordinate x_i = sum_{j=0..M} 2^-j y_ij maps the lattice
// {0, 2^-M, ..., 1}^n into subsets of a ground set of n (M + 1) elements;
// element (i, j) has index i (M + 1) + j. A DR-submodular F becomes the set
// function f(S) = F(decode(S)).

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "odrs/function.hpp"
#include "odrs/online.hpp"
#include "odrs/rng.hpp"

namespace odrs {

using Subset = std::vector<std::uint8_t>;

// ceil(log2 T), at least 1.
std::size_t default_binary_resolution(std::size_t horizon);

class BinaryLattice {
 public:
  BinaryLattice(std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t ground_size() const { return n_ * (m_ + 1); }
  std::size_t element(std::size_t i, std::size_t j) const { return i * (m_ + 1) + j; }

  bool on_lattice(ConstSpan x) const;
  Subset lift(ConstSpan x) const;
  // Inverse of lift; throws when a block encodes a value above 1.
  Vector unlift(const Subset& s) const;
  // Block values capped at 1; defined for every subset.
  Vector unlift_clamped(const Subset& s) const;
  bool in_image(const Subset& s) const;

 private:
  double block_value(const Subset& s, std::size_t i) const;
  std::size_t n_, m_;
};

class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual std::size_t ground_size() const = 0;
  virtual double value(const Subset& s) const = 0;
};

// f(S) = F(unlift_clamped(S)).
class SetFunctionView final : public SetFunction {
 public:
  SetFunctionView(FunctionPtr f, BinaryLattice lattice);
  std::size_t ground_size() const override { return lattice_.ground_size(); }
  double value(const Subset& s) const override;
  const FunctionPtr& function() const { return f_; }
  const BinaryLattice& lattice() const { return lattice_; }

 private:
  FunctionPtr f_;
  BinaryLattice lattice_;
};

struct SubmodularityReport {
  double max_violation = 0.0;
  std::size_t chains = 0;
  bool exhaustive = false;
};

// Max of [f(T+k) - f(T)] - [f(S+k) - f(S)] over S <= T, k not in T.
// Exhaustive up to 12 elements, otherwise `samples` random chains; limited
// to ground sets of at most 20 elements. When `image` is given only chains
// whose sets all lie in the lattice image are considered.
SubmodularityReport submodularity_bruteforce(const SetFunction& f, RngStream& rng, std::size_t samples = 20000,
                                             const BinaryLattice* image = nullptr);

// Randomized double greedy in index order. With `require_nonnegative`,
// a negative queried value throws.
Subset double_greedy(const SetFunction& f, RngStream& rng, bool require_nonnegative = true);
// Same sweep visiting the elements in `order` (a permutation of the ground set).
Subset double_greedy(const SetFunction& f, RngStream& rng, const std::vector<std::size_t>& order,
                     bool require_nonnegative = true);

class DiscreteOracle {
 public:
  virtual ~DiscreteOracle() = default;
  virtual std::size_t ground_size() const = 0;
  virtual const Subset& play() = 0;
  virtual void feedback(const SetFunctionView& ft) = 0;
  virtual std::string name() const = 0;
};

// Follow the leader: each round, double greedy on the sum of all past f~
// with a fresh random substream.
class BaselineDiscreteOracle final : public DiscreteOracle {
 public:
  BaselineDiscreteOracle(BinaryLattice lattice, std::uint64_t seed);
  std::size_t ground_size() const override { return lattice_.ground_size(); }
  const Subset& play() override;
  void feedback(const SetFunctionView& ft) override;
  std::string name() const override { return "ftl-double-greedy"; }

 private:
  BinaryLattice lattice_;
  RngStream rng_;
  std::shared_ptr<FunctionAccumulator> sum_;
  Subset current_;
  bool played_ = false;
  std::size_t t_ = 0;
};

struct HypercubeConfig {
  std::size_t horizon = 0;
  std::size_t resolution = 0;  // M; 0 = ceil(log2 T)
  std::uint64_t seed = 0;
};

class HypercubeLearner final : public OnlineAlgorithm {
 public:
  HypercubeLearner(std::size_t n, HypercubeConfig config);
  HypercubeLearner(std::size_t n, HypercubeConfig config, std::unique_ptr<DiscreteOracle> oracle);

  std::size_t dimension() const override { return lattice_.n(); }
  const Vector& play() override;
  void feedback(const FunctionPtr& f, RngStream& rng) override;
  std::string name() const override { return "hypercube"; }
  Metadata metadata() const override;

  const BinaryLattice& lattice() const { return lattice_; }

 private:
  HypercubeConfig config_;
  BinaryLattice lattice_;
  std::unique_ptr<DiscreteOracle> oracle_;
  Vector x_;
  bool played_ = false;
};

}  // namespace odrs

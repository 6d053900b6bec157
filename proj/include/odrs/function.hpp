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
#include <memory>
#include <string>
#include <vector>

#include "odrs/rng.hpp"
#include "odrs/vector_ops.hpp"

namespace odrs {

// Declared (or estimated) constants of an objective.
struct FunctionParams {
  double G = 0.0;      // bound on the gradient norm over the cube
  double beta = 0.0;   // smoothness
  double sigma = 0.0;  // stochastic gradient standard deviation
};

// Objective on [0,1]^n with value, exact gradient and a stochastic gradient.
class DRFunction {
 public:
  virtual ~DRFunction() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(ConstSpan x) const = 0;
  virtual Vector gradient(ConstSpan x) const = 0;
  // Exact gradient plus zero-mean Gaussian noise of total variance sigma^2.
  virtual Vector stochastic_gradient(ConstSpan x, RngStream& rng) const;
  virtual std::string name() const = 0;

  const FunctionParams& params() const { return params_; }
  void set_params(const FunctionParams& p) { params_ = p; }

 private:
  FunctionParams params_;
};

using FunctionPtr = std::shared_ptr<const DRFunction>;

// grad + N(0, sigma^2/n) per coordinate; sigma == 0 returns grad unchanged.
Vector noisy_gradient(const DRFunction& f, ConstSpan x, double sigma, RngStream& rng);

// A function family whose members can be summed into one member of the
// same family (quadratics with quadratics, revenue with equal p, ...).
class Accumulable : public DRFunction {
 public:
  virtual std::shared_ptr<Accumulable> clone_accumulable() const = 0;
  // this += other when the families match; false leaves this untouched.
  virtual bool absorb(const DRFunction& other) = 0;
};

// <w, x> + offset.
class LinearFunction final : public Accumulable {
 public:
  explicit LinearFunction(Vector w, double offset = 0.0) : w_(std::move(w)), offset_(offset) {}
  std::size_t dimension() const override { return w_.size(); }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  std::string name() const override { return "linear"; }
  std::shared_ptr<Accumulable> clone_accumulable() const override;
  bool absorb(const DRFunction& other) override;
  const Vector& weights() const { return w_; }
  double offset() const { return offset_; }

 private:
  Vector w_;
  double offset_;
};

class ConstantFunction final : public DRFunction {
 public:
  ConstantFunction(std::size_t n, double c) : n_(n), c_(c) {}
  std::size_t dimension() const override { return n_; }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  std::string name() const override { return "constant"; }

 private:
  std::size_t n_;
  double c_;
};

// scale * sum_k f_k; the generic fallback for summing per-round functions.
class SumFunction final : public DRFunction {
 public:
  SumFunction(std::size_t n, std::vector<FunctionPtr> terms, double scale = 1.0);
  std::size_t dimension() const override { return n_; }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  std::string name() const override { return "sum"; }
  const std::vector<FunctionPtr>& terms() const { return terms_; }

 private:
  std::size_t n_;
  std::vector<FunctionPtr> terms_;
  double scale_;
};

// Running sum of per-round functions. Members of an Accumulable family are
// merged into one term, everything else is kept as a list.
class FunctionAccumulator final : public DRFunction {
 public:
  explicit FunctionAccumulator(std::size_t n) : n_(n) {}
  void add(const FunctionPtr& f);
  std::size_t dimension() const override { return n_; }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  std::string name() const override { return "accumulated"; }
  std::size_t count() const { return count_; }
  std::size_t merged_terms() const { return merged_.size(); }
  std::size_t generic_terms() const { return generic_.size(); }

 private:
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<std::shared_ptr<Accumulable>> merged_;
  std::vector<FunctionPtr> generic_;
};

// Max sampled gradient norm over uniform points of the cube, times `margin`.
double estimate_gradient_bound(const DRFunction& f, std::size_t samples, RngStream& rng,
                               double margin = 1.1);

}  // namespace odrs

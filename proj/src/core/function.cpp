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

#include "odrs/function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odrs {

Vector DRFunction::stochastic_gradient(ConstSpan x, RngStream& rng) const {
  return noisy_gradient(*this, x, params().sigma, rng);
}

Vector noisy_gradient(const DRFunction& f, ConstSpan x, double sigma, RngStream& rng) {
  if (sigma < 0.0) throw std::invalid_argument("noisy_gradient: sigma must be >= 0");
  Vector g = f.gradient(x);
  if (sigma == 0.0 || g.empty()) return g;
  const double sd = sigma / std::sqrt(static_cast<double>(g.size()));
  for (double& v : g) v += sd * rng.normal();
  return g;
}

double LinearFunction::value(ConstSpan x) const {
  require_dimension(w_.size(), x.size(), "LinearFunction::value");
  return dot(w_, x) + offset_;
}

Vector LinearFunction::gradient(ConstSpan x) const {
  require_dimension(w_.size(), x.size(), "LinearFunction::gradient");
  return w_;
}

std::shared_ptr<Accumulable> LinearFunction::clone_accumulable() const {
  auto c = std::make_shared<LinearFunction>(w_, offset_);
  c->set_params(params());
  return c;
}

bool LinearFunction::absorb(const DRFunction& other) {
  const auto* o = dynamic_cast<const LinearFunction*>(&other);
  if (o == nullptr || o->w_.size() != w_.size()) return false;
  axpy(1.0, o->w_, w_);
  offset_ += o->offset_;
  return true;
}

double ConstantFunction::value(ConstSpan x) const {
  require_dimension(n_, x.size(), "ConstantFunction::value");
  return c_;
}

Vector ConstantFunction::gradient(ConstSpan x) const {
  require_dimension(n_, x.size(), "ConstantFunction::gradient");
  return Vector(n_, 0.0);
}

SumFunction::SumFunction(std::size_t n, std::vector<FunctionPtr> terms, double scale)
    : n_(n), terms_(std::move(terms)), scale_(scale) {
  for (const auto& t : terms_) {
    if (!t) throw std::invalid_argument("SumFunction: null term");
    require_dimension(n_, t->dimension(), "SumFunction term");
  }
}

double SumFunction::value(ConstSpan x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t->value(x);
  return scale_ * s;
}

Vector SumFunction::gradient(ConstSpan x) const {
  Vector g(n_, 0.0);
  for (const auto& t : terms_) axpy(1.0, t->gradient(x), g);
  if (scale_ != 1.0) {
    for (double& v : g) v *= scale_;
  }
  return g;
}

void FunctionAccumulator::add(const FunctionPtr& f) {
  if (!f) throw std::invalid_argument("FunctionAccumulator: null function");
  require_dimension(n_, f->dimension(), "FunctionAccumulator::add");
  ++count_;
  if (const auto* a = dynamic_cast<const Accumulable*>(f.get())) {
    for (auto& m : merged_) {
      if (m->absorb(*f)) return;
    }
    merged_.push_back(a->clone_accumulable());
    return;
  }
  generic_.push_back(f);
}

double FunctionAccumulator::value(ConstSpan x) const {
  require_dimension(n_, x.size(), "FunctionAccumulator::value");
  double s = 0.0;
  for (const auto& m : merged_) s += m->value(x);
  for (const auto& g : generic_) s += g->value(x);
  return s;
}

Vector FunctionAccumulator::gradient(ConstSpan x) const {
  require_dimension(n_, x.size(), "FunctionAccumulator::gradient");
  Vector g(n_, 0.0);
  for (const auto& m : merged_) axpy(1.0, m->gradient(x), g);
  for (const auto& f : generic_) axpy(1.0, f->gradient(x), g);
  return g;
}

double estimate_gradient_bound(const DRFunction& f, std::size_t samples, RngStream& rng, double margin) {
  const std::size_t n = f.dimension();
  double best = std::max(norm(f.gradient(Vector(n, 0.0))), norm(f.gradient(Vector(n, 1.0))));
  for (std::size_t s = 0; s < samples; ++s) best = std::max(best, norm(f.gradient(rng.uniform_cube(n))));
  return margin * best;
}

}  // namespace odrs

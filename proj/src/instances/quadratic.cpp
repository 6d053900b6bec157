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

#include <stdexcept>

#include "odrs/instances.hpp"

namespace odrs {

QuadraticFunction::QuadraticFunction(std::size_t n, Vector h_matrix, Vector h_linear, double c)
    : n_(n), hm_(std::move(h_matrix)), hl_(std::move(h_linear)), c_(c) {
  if (n == 0) throw std::invalid_argument("QuadraticFunction: n must be positive");
  require_dimension(n * n, hm_.size(), "QuadraticFunction matrix");
  require_dimension(n, hl_.size(), "QuadraticFunction linear term");
  if (!all_finite(hm_) || !all_finite(hl_)) throw std::invalid_argument("QuadraticFunction: non-finite data");
}

double QuadraticFunction::value(ConstSpan x) const {
  require_dimension(n_, x.size(), "QuadraticFunction::value");
  double quad = 0.0;
  for (std::size_t i = 0; i < n_; ++i) quad += x[i] * dot(ConstSpan(hm_).subspan(i * n_, n_), x);
  return 0.5 * quad + dot(hl_, x) + c_;
}

Vector QuadraticFunction::gradient(ConstSpan x) const {
  require_dimension(n_, x.size(), "QuadraticFunction::gradient");
  Vector g(n_);
  for (std::size_t i = 0; i < n_; ++i) g[i] = dot(ConstSpan(hm_).subspan(i * n_, n_), x) + hl_[i];
  return g;
}

std::shared_ptr<Accumulable> QuadraticFunction::clone_accumulable() const {
  auto c = std::make_shared<QuadraticFunction>(n_, hm_, hl_, c_);
  c->set_params(params());
  return c;
}

bool QuadraticFunction::absorb(const DRFunction& other) {
  const auto* o = dynamic_cast<const QuadraticFunction*>(&other);
  if (o == nullptr || o->n_ != n_) return false;
  axpy(1.0, o->hm_, hm_);
  axpy(1.0, o->hl_, hl_);
  c_ += o->c_;
  return true;
}

bool QuadraticFunction::dr_submodular() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (hm_[i * n_ + j] > 0.0 || hm_[i * n_ + j] != hm_[j * n_ + i]) return false;
    }
  }
  return true;
}

std::shared_ptr<QuadraticFunction> random_quadratic(std::size_t n, double density, RngStream& rng) {
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("random_quadratic: density outside [0, 1]");
  Vector h(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!rng.bernoulli(density)) continue;
      const double v = -rng.uniform();
      h[i * n + j] = v;
      h[j * n + i] = v;
    }
  }
  Vector lin(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += h[i * n + j];
    lin[i] = -0.5 * s;
  }
  return std::make_shared<QuadraticFunction>(n, std::move(h), std::move(lin), 0.0);
}

}  // namespace odrs

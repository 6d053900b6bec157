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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "odrs/instances.hpp"

namespace odrs {

RevenueFunction::RevenueFunction(std::shared_ptr<const Graph> graph, double p) : graph_(std::move(graph)), p_(p) {
  if (!graph_) throw std::invalid_argument("RevenueFunction: null graph");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("RevenueFunction: p must lie in (0, 1)");
  log_q_ = std::log1p(-p);
}

double RevenueFunction::value(ConstSpan x) const {
  const std::size_t n = dimension();
  require_dimension(n, x.size(), "RevenueFunction::value");
  Vector a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::exp(log_q_ * x[i]);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const Arc& e : graph_->out(i)) s += e.w * a[e.to];
    // 1 - q^x computed without cancellation.
    total += -std::expm1(log_q_ * x[i]) * s;
  }
  return total;
}

Vector RevenueFunction::gradient(ConstSpan x) const {
  const std::size_t n = dimension();
  require_dimension(n, x.size(), "RevenueFunction::gradient");
  Vector a(n), one_minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::exp(log_q_ * x[i]);
    one_minus[i] = -std::expm1(log_q_ * x[i]);
  }
  Vector g(n);
  for (std::size_t k = 0; k < n; ++k) {
    double out_sum = 0.0, in_sum = 0.0;
    for (const Arc& e : graph_->out(k)) out_sum += e.w * a[e.to];
    for (const Arc& e : graph_->in(k)) in_sum += e.w * one_minus[e.to];
    g[k] = log_q_ * a[k] * (in_sum - out_sum);
  }
  return g;
}

std::shared_ptr<Accumulable> RevenueFunction::clone_accumulable() const {
  auto c = std::make_shared<RevenueFunction>(graph_, p_);
  c->set_params(params());
  return c;
}

bool RevenueFunction::absorb(const DRFunction& other) {
  const auto* o = dynamic_cast<const RevenueFunction*>(&other);
  if (o == nullptr || o->p_ != p_ || o->dimension() != dimension()) return false;
  graph_ = std::make_shared<const Graph>(graph_->merged(*o->graph_));
  return true;
}

double RevenueFunction::analytic_gradient_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < dimension(); ++k) {
    double deg = 0.0;
    for (const Arc& e : graph_->out(k)) deg += e.w;
    for (const Arc& e : graph_->in(k)) deg += e.w;
    s += deg * deg;
  }
  return std::fabs(log_q_) * std::sqrt(s);
}

bool RevenueFunction::dr_submodular() const {
  for (std::size_t k = 0; k < dimension(); ++k) {
    double out = 0.0, in = 0.0;
    for (const Arc& e : graph_->out(k)) out += e.w;
    for (const Arc& e : graph_->in(k)) in += e.w;
    if ((1.0 - p_) * out < p_ * in - 1e-12 * (out + in)) return false;
  }
  return true;
}

BatchSampler::BatchSampler(std::shared_ptr<const Graph> graph, std::size_t k, double p, std::uint64_t seed)
    : graph_(std::move(graph)), k_(k), p_(p), rng_(seed) {
  if (!graph_) throw std::invalid_argument("BatchSampler: null graph");
  if (k > graph_->num_vertices()) throw std::invalid_argument("BatchSampler: batch larger than the vertex set");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("BatchSampler: p must lie in (0, 1)");
}

std::vector<std::uint8_t> BatchSampler::sample_mask() {
  const std::size_t n = graph_->num_vertices();
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (std::size_t i = 0; i < k_; ++i) std::swap(ids[i], ids[i + rng_.index(n - i)]);
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < k_; ++i) mask[ids[i]] = 1;
  return mask;
}

std::shared_ptr<RevenueFunction> BatchSampler::sample() {
  auto masked = std::make_shared<const Graph>(graph_->masked(sample_mask()));
  return std::make_shared<RevenueFunction>(std::move(masked), p_);
}

}  // namespace odrs

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
#include <stdexcept>

#include "odrs/hypercube.hpp"

namespace odrs {

std::size_t default_binary_resolution(std::size_t horizon) {
  std::size_t m = 0;
  while (m < 62 && (std::uint64_t{1} << m) < horizon) ++m;
  return std::max<std::size_t>(m, 1);
}

BinaryLattice::BinaryLattice(std::size_t n, std::size_t m) : n_(n), m_(m) {
  if (n == 0) throw std::invalid_argument("BinaryLattice: n must be positive");
  if (m == 0 || m > 52) throw std::invalid_argument("BinaryLattice: M must lie in [1, 52]");
}

bool BinaryLattice::on_lattice(ConstSpan x) const {
  if (x.size() != n_) return false;
  const double scale = std::ldexp(1.0, static_cast<int>(m_));
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
    const double s = v * scale;
    if (s != std::floor(s)) return false;
  }
  return true;
}

Subset BinaryLattice::lift(ConstSpan x) const {
  require_dimension(n_, x.size(), "BinaryLattice::lift");
  if (!on_lattice(x)) throw std::invalid_argument("BinaryLattice::lift: point is not on the binary lattice");
  Subset s(ground_size(), 0);
  const double scale = std::ldexp(1.0, static_cast<int>(m_));
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 1.0) {
      s[element(i, 0)] = 1;
      continue;
    }
    const auto k = static_cast<std::uint64_t>(x[i] * scale);
    for (std::size_t j = 1; j <= m_; ++j) s[element(i, j)] = static_cast<std::uint8_t>((k >> (m_ - j)) & 1U);
  }
  return s;
}

double BinaryLattice::block_value(const Subset& s, std::size_t i) const {
  double v = 0.0;
  for (std::size_t j = 0; j <= m_; ++j) {
    if (s[element(i, j)]) v += std::ldexp(1.0, -static_cast<int>(j));
  }
  return v;
}

bool BinaryLattice::in_image(const Subset& s) const {
  if (s.size() != ground_size()) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (block_value(s, i) > 1.0) return false;
  }
  return true;
}

Vector BinaryLattice::unlift(const Subset& s) const {
  if (s.size() != ground_size()) throw DimensionError(ground_size(), s.size(), "BinaryLattice::unlift");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    x[i] = block_value(s, i);
    if (x[i] > 1.0) throw std::invalid_argument("BinaryLattice::unlift: block value exceeds 1");
  }
  return x;
}

Vector BinaryLattice::unlift_clamped(const Subset& s) const {
  if (s.size() != ground_size()) throw DimensionError(ground_size(), s.size(), "BinaryLattice::unlift_clamped");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = std::min(1.0, block_value(s, i));
  return x;
}

SetFunctionView::SetFunctionView(FunctionPtr f, BinaryLattice lattice) : f_(std::move(f)), lattice_(lattice) {
  if (!f_) throw std::invalid_argument("SetFunctionView: null function");
  require_dimension(lattice_.n(), f_->dimension(), "SetFunctionView");
}

double SetFunctionView::value(const Subset& s) const { return f_->value(lattice_.unlift_clamped(s)); }

SubmodularityReport submodularity_bruteforce(const SetFunction& f, RngStream& rng, std::size_t samples,
                                             const BinaryLattice* image) {
  const std::size_t g = f.ground_size();
  if (g > 20) throw std::invalid_argument("submodularity_bruteforce: ground set larger than 20");
  SubmodularityReport rep;
  auto to_subset = [g](std::uint32_t mask) {
    Subset s(g, 0);
    for (std::size_t e = 0; e < g; ++e) s[e] = static_cast<std::uint8_t>((mask >> e) & 1U);
    return s;
  };
  auto valid = [&](std::uint32_t mask) { return image == nullptr || image->in_image(to_subset(mask)); };

  if (g <= 12) {
    rep.exhaustive = true;
    const std::uint32_t full = (std::uint32_t{1} << g);
    std::vector<double> val(full);
    std::vector<std::uint8_t> ok(full);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      val[mask] = f.value(to_subset(mask));
      ok[mask] = valid(mask) ? 1 : 0;
    }
    for (std::uint32_t t = 0; t < full; ++t) {
      for (std::size_t k = 0; k < g; ++k) {
        const std::uint32_t bit = std::uint32_t{1} << k;
        if ((t & bit) || !ok[t | bit]) continue;
        const double top = val[t | bit] - val[t];
        // Every submask of t, including t itself and the empty set.
        for (std::uint32_t s = t;; s = (s - 1) & t) {
          rep.max_violation = std::max(rep.max_violation, top - (val[s | bit] - val[s]));
          ++rep.chains;
          if (s == 0) break;
        }
      }
    }
    return rep;
  }
  for (std::size_t trial = 0; trial < samples; ++trial) {
    std::uint32_t t = 0, s = 0;
    std::size_t k = 0;
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      t = 0;
      for (std::size_t e = 0; e < g; ++e) {
        if (rng.bernoulli(0.5)) t |= std::uint32_t{1} << e;
      }
      k = rng.index(g);
      if (t & (std::uint32_t{1} << k)) continue;
      found = valid(t | (std::uint32_t{1} << k));
    }
    if (!found) continue;
    s = 0;
    for (std::size_t e = 0; e < g; ++e) {
      if ((t >> e) & 1U && rng.bernoulli(0.5)) s |= std::uint32_t{1} << e;
    }
    const std::uint32_t bit = std::uint32_t{1} << k;
    const double top = f.value(to_subset(t | bit)) - f.value(to_subset(t));
    const double bottom = f.value(to_subset(s | bit)) - f.value(to_subset(s));
    rep.max_violation = std::max(rep.max_violation, top - bottom);
    ++rep.chains;
  }
  return rep;
}

}  // namespace odrs

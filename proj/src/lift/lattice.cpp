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
#include <string>

#include "odrs/lift.hpp"

namespace odrs {
namespace {

constexpr double kGridTol = 1e-9;

}  // namespace

std::size_t default_unary_resolution(std::size_t horizon, std::size_t n) {
  if (n == 0) throw std::invalid_argument("default_unary_resolution: n must be positive");
  const double r = std::pow(static_cast<double>(horizon) / static_cast<double>(n), 0.25);
  // Guard against pow landing a hair above an exact integer.
  const double m = std::ceil(r - 1e-12);
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

UnaryLattice::UnaryLattice(std::size_t n, std::size_t m) : n_(n), m_(m) {
  if (n == 0) throw std::invalid_argument("UnaryLattice: n must be positive");
  if (m == 0) throw std::invalid_argument("UnaryLattice: M must be >= 1");
}

Vector UnaryLattice::snap(ConstSpan c) const {
  require_dimension(n_, c.size(), "UnaryLattice::snap");
  const double md = static_cast<double>(m_);
  Vector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double l = std::floor(std::clamp(c[i], 0.0, 1.0) * md + kGridTol);
    out[i] = std::min(l, md) / md;
  }
  return out;
}

bool UnaryLattice::on_lattice(ConstSpan x) const {
  if (x.size() != n_) return false;
  const double md = static_cast<double>(m_);
  for (double v : x) {
    const double s = v * md;
    if (!(v >= -kGridTol && v <= 1.0 + kGridTol) || std::fabs(s - std::round(s)) > kGridTol * md) return false;
  }
  return true;
}

std::vector<std::size_t> UnaryLattice::levels(ConstSpan x) const {
  require_dimension(n_, x.size(), "UnaryLattice::levels");
  if (!on_lattice(x)) throw LatticeError("point is not on the unary lattice: " + to_string(x));
  std::vector<std::size_t> l(n_);
  for (std::size_t i = 0; i < n_; ++i) l[i] = static_cast<std::size_t>(std::llround(x[i] * static_cast<double>(m_)));
  return l;
}

Vector UnaryLattice::from_levels(const std::vector<std::size_t>& levels) const {
  if (levels.size() != n_) throw DimensionError(n_, levels.size(), "UnaryLattice::from_levels");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (levels[i] > m_) throw LatticeError("level exceeds M");
    x[i] = static_cast<double>(levels[i]) / static_cast<double>(m_);
  }
  return x;
}

Vector UnaryLattice::lift(ConstSpan x) const { return lift_levels(levels(x)); }

Vector UnaryLattice::lift_levels(const std::vector<std::size_t>& levels) const {
  if (levels.size() != n_) throw DimensionError(n_, levels.size(), "UnaryLattice::lift_levels");
  Vector bits(n_ * m_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (levels[i] > m_) throw LatticeError("level exceeds M");
    std::fill_n(bits.begin() + static_cast<std::ptrdiff_t>(i * m_), levels[i], 1.0);
  }
  return bits;
}

std::vector<std::size_t> UnaryLattice::bit_levels(ConstSpan bits) const {
  require_dimension(n_ * m_, bits.size(), "UnaryLattice::bit_levels");
  std::vector<std::size_t> l(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    bool ended = false;
    for (std::size_t j = 0; j < m_; ++j) {
      const double b = bits[i * m_ + j];
      if (b != 0.0 && b != 1.0) throw LatticeError("lifted point is not binary");
      if (b == 1.0) {
        if (ended) throw LatticeError("staircase violated in block " + std::to_string(i));
        ++l[i];
      } else {
        ended = true;
      }
    }
  }
  return l;
}

Vector UnaryLattice::unlift(ConstSpan bits) const { return from_levels(bit_levels(bits)); }

Vector UnaryLattice::unlift_relaxed(ConstSpan p) const {
  require_dimension(n_ * m_, p.size(), "UnaryLattice::unlift_relaxed");
  if (!is_staircase(p, 1e-9)) throw LatticeError("relaxed point violates the staircase inequalities");
  Vector x(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m_; ++j) s += p[i * m_ + j];
    x[i] = std::clamp(s / static_cast<double>(m_), 0.0, 1.0);
  }
  return x;
}

Vector UnaryLattice::lift_reward(ConstSpan a) const {
  require_dimension(n_, a.size(), "UnaryLattice::lift_reward");
  Vector out(n_ * m_);
  const double md = static_cast<double>(m_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(i * m_), m_, a[i] / md);
  }
  return out;
}

bool UnaryLattice::is_staircase(ConstSpan p, double tol) const {
  if (p.size() != n_ * m_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      const double v = p[i * m_ + j];
      if (!(v >= -tol && v <= 1.0 + tol)) return false;
      if (j + 1 < m_ && p[i * m_ + j + 1] > v + tol) return false;
    }
  }
  return true;
}

}  // namespace odrs

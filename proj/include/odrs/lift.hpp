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

// Unary lattice lifting and the online vee-learning oracle.
//
// A lattice point x in {0, 1/M, ..., 1}^n is encoded block-wise: coordinate
// x_i = l/M becomes the staircase 1^l 0^(M-l). Under this map the join of
// lattice points is the bitwise join of their codes, so the vee reward
// <a, c v x> turns into a linear reward over the lifted region.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "odrs/body.hpp"
#include "odrs/linear_oracle.hpp"
#include "odrs/rng.hpp"

namespace odrs {

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RoundingError : public std::runtime_error {
 public:
  RoundingError(const std::string& what, double gap) : std::runtime_error(what), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

// Number of lattice steps per coordinate: ceil((T/n)^(1/4)), at least 1.
std::size_t default_unary_resolution(std::size_t horizon, std::size_t n);

class UnaryLattice {
 public:
  UnaryLattice(std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t lifted_dimension() const { return n_ * m_; }

  // floor(c_i M) / M.
  Vector snap(ConstSpan c) const;
  bool on_lattice(ConstSpan x) const;
  // Integer level l_i of each coordinate; throws LatticeError off the grid.
  std::vector<std::size_t> levels(ConstSpan x) const;
  Vector from_levels(const std::vector<std::size_t>& levels) const;

  Vector lift(ConstSpan x) const;
  Vector lift_levels(const std::vector<std::size_t>& levels) const;
  // Inverse of lift; requires a binary staircase.
  Vector unlift(ConstSpan bits) const;
  // Block averages of a relaxed staircase point.
  Vector unlift_relaxed(ConstSpan p) const;
  std::vector<std::size_t> bit_levels(ConstSpan bits) const;

  // Block-constant a_i / M.
  Vector lift_reward(ConstSpan a) const;

  bool is_staircase(ConstSpan p, double tol = 0.0) const;

 private:
  std::size_t n_, m_;
};

// The lifted region conv(K~) over a hypercube or uniform-cost budget base.
// Vertices are staircase codes whose levels sum to at most `increments()`.
class LiftedBody final : public Region {
 public:
  LiftedBody(ConvexBody base, std::size_t m);

  static bool supports(const ConvexBody& base);

  const UnaryLattice& lattice() const { return lattice_; }
  const ConvexBody& base() const { return base_; }
  // Total number of unit steps allowed across all blocks.
  std::size_t increments() const { return increments_; }
  bool budget_binding() const { return increments_ < lattice_.lifted_dimension(); }

  std::size_t dimension() const override { return lattice_.lifted_dimension(); }
  // Staircase, box and increment-count constraints (the linear relaxation).
  bool contains(ConstSpan p) const override;
  // Exact maximizer over the integral codes, returned as levels / as bits.
  std::vector<std::size_t> best_levels(ConstSpan w) const;
  Vector linear_maximize(ConstSpan w) const override;
  Vector project(ConstSpan p) const override;
  Vector initial_point() const override { return Vector(dimension(), 0.0); }
  double diameter() const override { return diameter_; }

 private:
  Vector project_hull(ConstSpan y) const;

  ConvexBody base_;
  UnaryLattice lattice_;
  std::size_t increments_;
  double diameter_;
};

struct RoundingResult {
  std::vector<std::vector<std::size_t>> vertices;  // levels of the visited vertices
  std::size_t chosen = 0;
  double gap = 0.0;  // |y - mean of vertices|
  Vector mean;
};

// Approximate Caratheodory decomposition of y into at most ceil(c0 / eps^2)
// vertices; one of them is selected uniformly at random. Throws
// RoundingError when the gap stays above eps.
RoundingResult caratheodory_round(const LiftedBody& body, ConstSpan y, double eps, double c0, RngStream& rng);

struct VeeConfig {
  std::size_t m = 1;
  double epsilon = 0.05;
  double c0 = 16.0;
  OracleConfig inner;
};

// Online vee learner: plays lattice points x^t of the base body and is
// rewarded with <a^t, c^t v x^t>.
class VeeOracle {
 public:
  VeeOracle(std::shared_ptr<const LiftedBody> body, VeeConfig config);

  const Vector& play();
  // Consumes (c, a) for the current round and fixes next round's play.
  // Returns the realized reward <a, c v x^t>.
  double feedback(ConstSpan c, ConstSpan a);

  std::size_t rounds_completed() const { return t_; }
  const LiftedBody& body() const { return *body_; }
  const LinearOracle& inner() const { return inner_; }
  double last_rounding_gap() const { return last_gap_; }
  std::size_t last_vertex_count() const { return last_k_; }

 private:
  std::shared_ptr<const LiftedBody> body_;
  VeeConfig config_;
  LinearOracle inner_;
  RngStream round_rng_;
  Vector x_;
  bool played_ = false;
  std::size_t t_ = 0;
  double last_gap_ = 0.0;
  std::size_t last_k_ = 0;
  // Decomposition cache, keyed on the relaxed point.
  Vector cached_y_;
  RoundingResult cached_;
};

}  // namespace odrs

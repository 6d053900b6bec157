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

// Feasible regions inside the unit cube.
//
// A Region is anything an online linear oracle can play on: it must answer
// membership, exact linear maximization, Euclidean projection, a starting
// point and a diameter bound. ConvexBody covers the closed set of kinds the
// library supports exactly; the lifted region of the vee oracle is the other
// implementation (see lift.hpp).

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "odrs/vector_ops.hpp"

namespace odrs {

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kProjectionTol = 1e-7;
inline constexpr double kDrTol = 1e-8;
inline constexpr std::size_t kProjectionIterationCap = 10000;

class InfeasibleBodyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Region {
 public:
  virtual ~Region() = default;
  virtual std::size_t dimension() const = 0;
  virtual bool contains(ConstSpan x) const = 0;
  virtual Vector linear_maximize(ConstSpan w) const = 0;
  virtual Vector project(ConstSpan x) const = 0;
  // Where an oracle starts before any feedback.
  virtual Vector initial_point() const = 0;
  virtual double diameter() const = 0;
};

enum class BodyKind { kHypercube, kBudget, kPolytope, kBoxBand };

std::string_view body_kind_name(BodyKind kind);

class ConvexBody final : public Region {
 public:
  static ConvexBody hypercube(std::size_t n);
  // sum_i costs[i] x_i <= budget, x in [0,1]^n, costs >= 0.
  static ConvexBody budget(Vector costs, double budget);
  static ConvexBody uniform_budget(std::size_t n, double budget);
  // rows * x <= rhs intersected with [0,1]^n.
  static ConvexBody polytope(std::vector<Vector> rows, Vector rhs);
  // lower <= x <= upper (inside [0,1]^n) and min_total <= <costs, x> <= max_total.
  static ConvexBody box_band(Vector lower, Vector upper, Vector costs, double min_total,
                             double max_total = std::numeric_limits<double>::infinity());
  // The investment band sum_i x_i in [min_total, max_total] over [0,1]^n.
  static ConvexBody sum_band(std::size_t n, double min_total, double max_total);

  std::size_t dimension() const override { return n_; }
  BodyKind kind() const { return kind_; }
  bool down_closed() const { return down_closed_; }
  double diameter() const override { return diameter_; }
  bool diameter_exact() const { return diameter_exact_; }

  bool contains(ConstSpan x) const override;
  // Maximizer over the body; zero weights resolve to the lower end of the
  // coordinate range and equal-ratio ties favour the lowest index.
  Vector linear_maximize(ConstSpan w) const override;
  Vector project(ConstSpan x) const override;
  Vector min_inf_norm_point() const;
  Vector initial_point() const override { return min_inf_norm_point(); }

  // The same body with the coordinate upper bounds tightened to `cap`
  // (coordinate-wise min with the current box). Only for kinds with a box.
  ConvexBody with_upper_cap(ConstSpan cap) const;

  // Largest violation of any constraint at x (0 when feasible).
  double max_violation(ConstSpan x) const;

  std::string describe() const;

  // Structured-kind data (hypercube / budget / box band share this form).
  const Vector& box_lower() const { return lower_; }
  const Vector& box_upper() const { return upper_; }
  const Vector& costs() const { return costs_; }
  double min_total() const { return min_total_; }
  double max_total() const { return max_total_; }
  bool uniform_costs() const;
  const std::vector<Vector>& rows() const { return rows_; }
  const Vector& rhs() const { return rhs_; }

 private:
  ConvexBody() = default;
  void finalize();

  Vector band_linear_maximize(ConstSpan w) const;
  Vector band_project(ConstSpan x) const;
  Vector band_min_inf_norm() const;
  Vector polytope_linear_maximize(ConstSpan w) const;
  Vector polytope_project(ConstSpan x) const;
  Vector polytope_min_inf_norm() const;
  void compute_diameter();

  BodyKind kind_ = BodyKind::kHypercube;
  std::size_t n_ = 0;
  bool down_closed_ = true;
  double diameter_ = 0.0;
  bool diameter_exact_ = true;

  // Box + weighted-sum band (hypercube, budget, box band).
  Vector lower_, upper_, costs_;
  double min_total_ = -std::numeric_limits<double>::infinity();
  double max_total_ = std::numeric_limits<double>::infinity();

  // General half-spaces (polytope).
  std::vector<Vector> rows_;
  Vector rhs_;
};

}  // namespace odrs

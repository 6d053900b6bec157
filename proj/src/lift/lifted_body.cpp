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
#include <map>

#include <Eigen/Dense>

#include "odrs/lift.hpp"

namespace odrs {
namespace {

// Prefix sums of block i of w: out[l] = sum_{j < l} w[i M + j].
void block_prefix(ConstSpan w, std::size_t i, std::size_t m, std::vector<double>& out) {
  out.assign(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) out[j + 1] = out[j] + w[i * m + j];
}

// Euclidean projection of v onto {1 >= p_1 >= ... >= p_m >= 0} by pool
// adjacent violators followed by clamping.
void project_staircase_block(std::span<double> v) {
  const std::size_t m = v.size();
  std::vector<double> sum, cnt;
  sum.reserve(m);
  cnt.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    sum.push_back(v[j]);
    cnt.push_back(1.0);
    // Non-increasing fit: merge while the later pool exceeds the earlier one.
    while (sum.size() > 1 && sum[sum.size() - 1] / cnt[cnt.size() - 1] > sum[sum.size() - 2] / cnt[cnt.size() - 2]) {
      sum[sum.size() - 2] += sum.back();
      cnt[cnt.size() - 2] += cnt.back();
      sum.pop_back();
      cnt.pop_back();
    }
  }
  std::size_t j = 0;
  for (std::size_t k = 0; k < sum.size(); ++k) {
    const double mean = std::clamp(sum[k] / cnt[k], 0.0, 1.0);
    for (std::size_t c = 0; c < static_cast<std::size_t>(cnt[k]); ++c) v[j++] = mean;
  }
}

double levels_dot(ConstSpan w, const std::vector<std::size_t>& levels, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = 0; j < levels[i]; ++j) s += w[i * m + j];
  }
  return s;
}

}  // namespace

bool LiftedBody::supports(const ConvexBody& base) {
  if (base.kind() == BodyKind::kHypercube) return true;
  return base.kind() == BodyKind::kBudget && base.uniform_costs();
}

LiftedBody::LiftedBody(ConvexBody base, std::size_t m)
    : base_(std::move(base)), lattice_(base_.dimension(), m) {
  if (!supports(base_)) {
    throw std::invalid_argument("LiftedBody: exact lifted optimization needs a hypercube or uniform-cost budget base, got " +
                                base_.describe());
  }
  const std::size_t full = lattice_.lifted_dimension();
  increments_ = full;
  if (base_.kind() == BodyKind::kBudget && base_.costs().front() > 0.0) {
    const double cap = base_.max_total() / base_.costs().front() * static_cast<double>(m);
    const double k = std::floor(cap + 1e-9);
    if (k < static_cast<double>(full)) increments_ = static_cast<std::size_t>(k);
  }
  diameter_ = std::sqrt(static_cast<double>(std::min(2 * increments_, full)));
}

bool LiftedBody::contains(ConstSpan p) const {
  if (p.size() != dimension()) throw DimensionError(dimension(), p.size(), "LiftedBody::contains");
  if (!lattice_.is_staircase(p, kFeasibilityTol)) return false;
  double s = 0.0;
  for (double v : p) s += v;
  return s <= static_cast<double>(increments_) + kFeasibilityTol;
}

std::vector<std::size_t> LiftedBody::best_levels(ConstSpan w) const {
  require_dimension(dimension(), w.size(), "LiftedBody::best_levels");
  const std::size_t n = lattice_.n(), m = lattice_.m();
  std::vector<std::vector<double>> prefix(n);
  for (std::size_t i = 0; i < n; ++i) block_prefix(w, i, m, prefix[i]);

  std::vector<std::size_t> levels(n, 0);
  if (!budget_binding()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 1; l <= m; ++l) {
        if (prefix[i][l] > prefix[i][levels[i]]) levels[i] = l;
      }
    }
    return levels;
  }
  // Multiple-choice knapsack over blocks: best[i][c] is the best value of
  // blocks i..n-1 using at most c increments.
  const std::size_t cap = increments_;
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t c = 0; c <= cap; ++c) {
      double b = prefix[i][0] + best[i + 1][c];
      for (std::size_t l = 1; l <= std::min(m, c); ++l) b = std::max(b, prefix[i][l] + best[i + 1][c - l]);
      best[i][c] = b;
    }
  }
  std::size_t c = cap;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = best[i][c];
    const double tol = 1e-12 * (1.0 + std::fabs(target));
    for (std::size_t l = 0; l <= std::min(m, c); ++l) {
      if (prefix[i][l] + best[i + 1][c - l] >= target - tol) {
        levels[i] = l;
        break;
      }
    }
    c -= levels[i];
  }
  return levels;
}

Vector LiftedBody::linear_maximize(ConstSpan w) const { return lattice_.lift_levels(best_levels(w)); }

Vector LiftedBody::project(ConstSpan p) const {
  require_dimension(dimension(), p.size(), "LiftedBody::project");
  if (budget_binding()) return project_hull(p);
  Vector out(p.begin(), p.end());
  const std::size_t m = lattice_.m();
  for (std::size_t i = 0; i < lattice_.n(); ++i) project_staircase_block(std::span<double>(out).subspan(i * m, m));
  return out;
}

Vector LiftedBody::project_hull(ConstSpan y) const {
  // Wolfe's minimum-norm-point method on |p - y|^2: the corral holds the
  // vertices of the current face, minor cycles solve the affine subproblem
  // exactly and drop vertices whose weights turn non-positive.
  const std::size_t d = dimension();
  std::vector<std::vector<std::size_t>> corral;
  std::vector<Vector> pts;
  Vector lambda;
  {
    Vector shifted(y.begin(), y.end());
    for (double& v : shifted) v -= 0.5;
    corral.push_back(best_levels(shifted));
    pts.push_back(lattice_.lift_levels(corral.back()));
    lambda.push_back(1.0);
  }
  Vector p = pts.front();
  auto combine = [&]() {
    std::fill(p.begin(), p.end(), 0.0);
    for (std::size_t k = 0; k < pts.size(); ++k) axpy(lambda[k], pts[k], p);
  };
  // argmin over the affine hull of the corral, as barycentric weights.
  auto affine_min = [&]() {
    const std::size_t k = pts.size();
    Vector alpha(k, 0.0);
    if (k == 1) {
      alpha[0] = 1.0;
      return alpha;
    }
    Eigen::MatrixXd b(d, k - 1);
    Eigen::VectorXd rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
      rhs(r) = y[r] - pts[0][r];
      for (std::size_t c = 1; c < k; ++c) b(r, c - 1) = pts[c][r] - pts[0][r];
    }
    const Eigen::VectorXd beta = b.completeOrthogonalDecomposition().solve(rhs);
    double rest = 1.0;
    for (std::size_t c = 1; c < k; ++c) {
      alpha[c] = beta(c - 1);
      rest -= beta(c - 1);
    }
    alpha[0] = rest;
    return alpha;
  };

  Vector resid(d);
  const double tol = 1e-14 * (1.0 + squared_norm(y));
  double gap = 0.0;
  for (std::size_t it = 0; it < kProjectionIterationCap; ++it) {
    for (std::size_t k = 0; k < d; ++k) resid[k] = y[k] - p[k];
    auto s = best_levels(resid);
    gap = levels_dot(resid, s, lattice_.m()) - dot(resid, p);
    if (gap <= tol) return p;
    if (std::find(corral.begin(), corral.end(), s) != corral.end()) break;
    corral.push_back(s);
    pts.push_back(lattice_.lift_levels(s));
    lambda.push_back(0.0);
    for (std::size_t minor = 0; minor <= d + 1; ++minor) {
      const Vector alpha = affine_min();
      if (*std::min_element(alpha.begin(), alpha.end()) > 1e-15) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k] <= 1e-15 && lambda[k] - alpha[k] > 0.0) theta = std::min(theta, lambda[k] / (lambda[k] - alpha[k]));
      }
      for (std::size_t k = 0; k < alpha.size(); ++k) lambda[k] += theta * (alpha[k] - lambda[k]);
      for (std::size_t k = lambda.size(); k-- > 0;) {
        if (lambda[k] <= 1e-15) {
          lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(k));
          pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
          corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(k));
        }
      }
      double total = 0.0;
      for (double v : lambda) total += v;
      for (double& v : lambda) v /= total;
    }
    combine();
  }
  if (gap <= 1e-10) return p;
  throw ProjectionError("lifted projection: minimum-norm-point gap " + std::to_string(gap) +
                        " did not close");
}

}  // namespace odrs

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

#include "odrs/body.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "odrs/lp.hpp"

namespace odrs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest squared norm of a point in [0,1]^k with at most `cap` total mass.
double max_sq_norm_uniform(std::size_t k, double cap) {
  const double whole = std::floor(cap);
  if (static_cast<double>(k) <= whole) return static_cast<double>(k);
  const double frac = cap - whole;
  return whole + frac * frac;
}

}  // namespace

std::string_view body_kind_name(BodyKind kind) {
  switch (kind) {
    case BodyKind::kHypercube: return "hypercube";
    case BodyKind::kBudget: return "budget";
    case BodyKind::kPolytope: return "polytope";
    case BodyKind::kBoxBand: return "box_band";
  }
  return "unknown";
}

ConvexBody ConvexBody::hypercube(std::size_t n) {
  if (n == 0) throw std::invalid_argument("hypercube: dimension must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::kHypercube;
  b.n_ = n;
  b.lower_.assign(n, 0.0);
  b.upper_.assign(n, 1.0);
  b.costs_.assign(n, 0.0);
  b.finalize();
  return b;
}

ConvexBody ConvexBody::budget(Vector costs, double budget) {
  if (costs.empty()) throw std::invalid_argument("budget: dimension must be positive");
  for (double c : costs) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("budget: costs must be finite and >= 0");
  }
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw InfeasibleBodyError("budget: B must be finite and >= 0");
  ConvexBody b;
  b.kind_ = BodyKind::kBudget;
  b.n_ = costs.size();
  b.lower_.assign(b.n_, 0.0);
  b.upper_.assign(b.n_, 1.0);
  b.costs_ = std::move(costs);
  b.max_total_ = budget;
  b.finalize();
  return b;
}

ConvexBody ConvexBody::uniform_budget(std::size_t n, double budget) {
  return ConvexBody::budget(Vector(n, 1.0), budget);
}

ConvexBody ConvexBody::polytope(std::vector<Vector> rows, Vector rhs) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("polytope: rows/rhs size mismatch");
  if (rows.empty()) throw std::invalid_argument("polytope: need at least one row (use hypercube otherwise)");
  const std::size_t n = rows.front().size();
  if (n == 0) throw std::invalid_argument("polytope: dimension must be positive");
  for (const auto& r : rows) {
    require_dimension(n, r.size(), "polytope row");
    if (!all_finite(r)) throw std::invalid_argument("polytope: non-finite coefficient");
  }
  if (!all_finite(rhs)) throw std::invalid_argument("polytope: non-finite rhs");
  ConvexBody b;
  b.kind_ = BodyKind::kPolytope;
  b.n_ = n;
  b.rows_ = std::move(rows);
  b.rhs_ = std::move(rhs);
  b.finalize();
  return b;
}

ConvexBody ConvexBody::box_band(Vector lower, Vector upper, Vector costs, double min_total,
                                double max_total) {
  const std::size_t n = lower.size();
  if (n == 0) throw std::invalid_argument("box_band: dimension must be positive");
  require_dimension(n, upper.size(), "box_band upper");
  require_dimension(n, costs.size(), "box_band costs");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] >= 0.0 && lower[i] <= upper[i] && upper[i] <= 1.0)) {
      throw InfeasibleBodyError("box_band: need 0 <= lower <= upper <= 1 at coordinate " + std::to_string(i));
    }
    if (!(costs[i] >= 0.0) || !std::isfinite(costs[i])) {
      throw std::invalid_argument("box_band: costs must be finite and >= 0");
    }
  }
  if (std::isnan(min_total) || std::isnan(max_total) || min_total > max_total) {
    throw InfeasibleBodyError("box_band: need min_total <= max_total");
  }
  ConvexBody b;
  b.kind_ = BodyKind::kBoxBand;
  b.n_ = n;
  b.lower_ = std::move(lower);
  b.upper_ = std::move(upper);
  b.costs_ = std::move(costs);
  b.min_total_ = min_total;
  b.max_total_ = max_total;
  const double lo_total = dot(b.costs_, b.lower_);
  const double hi_total = dot(b.costs_, b.upper_);
  if (lo_total > max_total + kFeasibilityTol || hi_total < min_total - kFeasibilityTol) {
    throw InfeasibleBodyError("box_band: band does not meet the box");
  }
  b.finalize();
  return b;
}

ConvexBody ConvexBody::sum_band(std::size_t n, double min_total, double max_total) {
  return box_band(Vector(n, 0.0), Vector(n, 1.0), Vector(n, 1.0), min_total, max_total);
}

void ConvexBody::finalize() {
  switch (kind_) {
    case BodyKind::kHypercube:
    case BodyKind::kBudget:
      down_closed_ = true;
      break;
    case BodyKind::kBoxBand: {
      bool lower_zero = std::all_of(lower_.begin(), lower_.end(), [](double v) { return v == 0.0; });
      down_closed_ = lower_zero && min_total_ <= 0.0;
      break;
    }
    case BodyKind::kPolytope: {
      // Non-negative rows with non-negative rhs are down-closed; that is the
      // only case flagged, other down-closed polytopes are reported as general.
      bool nonneg = std::all_of(rhs_.begin(), rhs_.end(), [](double v) { return v >= 0.0; });
      for (const auto& r : rows_) {
        nonneg = nonneg && std::all_of(r.begin(), r.end(), [](double v) { return v >= 0.0; });
      }
      down_closed_ = nonneg;
      // Emptiness check via the LP.
      Vector zero(n_, 0.0);
      std::vector<Vector> a = rows_;
      Vector b = rhs_;
      for (std::size_t i = 0; i < n_; ++i) {
        a.push_back(basis(n_, i));
        b.push_back(1.0);
      }
      if (lp::maximize(a, b, zero).status != lp::Status::kOptimal) {
        throw InfeasibleBodyError("polytope: empty feasible region");
      }
      break;
    }
  }
  compute_diameter();
}

bool ConvexBody::uniform_costs() const {
  if (costs_.empty()) return false;
  return std::all_of(costs_.begin(), costs_.end(), [&](double c) { return c == costs_.front(); });
}

void ConvexBody::compute_diameter() {
  const double box = std::sqrt(static_cast<double>(n_));
  switch (kind_) {
    case BodyKind::kHypercube:
      diameter_ = box;
      diameter_exact_ = true;
      return;
    case BodyKind::kPolytope:
      diameter_ = box;
      diameter_exact_ = false;
      return;
    case BodyKind::kBudget:
    case BodyKind::kBoxBand:
      break;
  }
  double best = box;
  bool exact = kind_ == BodyKind::kBudget;
  const bool capped = std::isfinite(max_total_);
  if (capped && uniform_costs() && costs_.front() > 0.0) {
    // Two points with disjoint supports are extremal; enumerate the split.
    const double cap = max_total_ / costs_.front();
    double d2 = 0.0;
    for (std::size_t k1 = 0; k1 <= n_; ++k1) {
      const std::size_t k2 = n_ - k1;
      d2 = std::max(d2, max_sq_norm_uniform(k1, cap) + max_sq_norm_uniform(k2, cap));
    }
    best = std::min(best, std::sqrt(d2));
  } else if (capped) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double m = costs_[i] > 0.0 ? std::min(1.0, max_total_ / costs_[i]) : 1.0;
      s += m * m;
    }
    best = std::min(best, std::sqrt(2.0 * s));
    exact = false;
  } else if (!uniform_costs()) {
    exact = false;
  }
  if (kind_ == BodyKind::kBoxBand) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (upper_[i] - lower_[i]) * (upper_[i] - lower_[i]);
    best = std::min(best, std::sqrt(s));
    exact = false;
  }
  if (kind_ == BodyKind::kBudget && !(uniform_costs() && costs_.front() > 0.0)) {
    exact = costs_.front() == 0.0 && uniform_costs();  // zero costs: the cube
  }
  diameter_ = best;
  diameter_exact_ = exact;
}

double ConvexBody::max_violation(ConstSpan x) const {
  require_dimension(n_, x.size(), "ConvexBody::max_violation");
  double v = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!std::isfinite(x[i])) return kInf;
    v = std::max({v, -x[i], x[i] - 1.0});
  }
  if (kind_ == BodyKind::kPolytope) {
    for (std::size_t r = 0; r < rows_.size(); ++r) v = std::max(v, dot(rows_[r], x) - rhs_[r]);
    return v;
  }
  for (std::size_t i = 0; i < n_; ++i) v = std::max({v, lower_[i] - x[i], x[i] - upper_[i]});
  const double total = dot(costs_, x);
  if (std::isfinite(max_total_)) v = std::max(v, total - max_total_);
  if (std::isfinite(min_total_)) v = std::max(v, min_total_ - total);
  return v;
}

bool ConvexBody::contains(ConstSpan x) const { return max_violation(x) <= kFeasibilityTol; }

Vector ConvexBody::linear_maximize(ConstSpan w) const {
  require_dimension(n_, w.size(), "ConvexBody::linear_maximize");
  if (kind_ == BodyKind::kPolytope) return polytope_linear_maximize(w);
  return band_linear_maximize(w);
}

Vector ConvexBody::band_linear_maximize(ConstSpan w) const {
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = w[i] > 0.0 ? upper_[i] : lower_[i];
  if (kind_ == BodyKind::kHypercube) return x;
  double total = dot(costs_, x);

  if (total > max_total_) {
    // Give back cost where it loses the least reward per unit of cost.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_; ++i) {
      if (costs_[i] > 0.0 && x[i] > lower_[i]) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double ra = w[a] / costs_[a], rb = w[b] / costs_[b];
      if (ra != rb) return ra < rb;
      return a > b;  // keep lower indices at their upper value
    });
    for (std::size_t i : idx) {
      const double excess = total - max_total_;
      if (excess <= 0.0) break;
      const double room = (x[i] - lower_[i]) * costs_[i];
      if (room <= excess) {
        total -= room;
        x[i] = lower_[i];
      } else {
        x[i] -= excess / costs_[i];
        total = max_total_;
      }
    }
  } else if (total < min_total_) {
    // Buy the missing cost where it loses the least reward per unit.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_; ++i) {
      if (costs_[i] > 0.0 && x[i] < upper_[i]) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double ra = w[a] / costs_[a], rb = w[b] / costs_[b];
      if (ra != rb) return ra > rb;
      return a < b;
    });
    for (std::size_t i : idx) {
      const double deficit = min_total_ - total;
      if (deficit <= 0.0) break;
      const double room = (upper_[i] - x[i]) * costs_[i];
      if (room <= deficit) {
        total += room;
        x[i] = upper_[i];
      } else {
        x[i] += deficit / costs_[i];
        total = min_total_;
      }
    }
  }
  return x;
}

Vector ConvexBody::polytope_linear_maximize(ConstSpan w) const {
  std::vector<Vector> a = rows_;
  Vector b = rhs_;
  for (std::size_t i = 0; i < n_; ++i) {
    a.push_back(basis(n_, i));
    b.push_back(1.0);
  }
  const lp::Result r = lp::maximize(a, b, w);
  if (r.status != lp::Status::kOptimal) throw std::logic_error("polytope linear_maximize: LP not optimal");
  Vector x = r.x;
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

Vector ConvexBody::project(ConstSpan x) const {
  require_dimension(n_, x.size(), "ConvexBody::project");
  if (!all_finite(x)) throw std::invalid_argument("ConvexBody::project: non-finite input");
  if (kind_ == BodyKind::kPolytope) return polytope_project(x);
  return band_project(x);
}

Vector ConvexBody::band_project(ConstSpan y) const {
  auto at = [&](double lambda) {
    Vector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = std::clamp(y[i] - lambda * costs_[i], lower_[i], upper_[i]);
    return x;
  };
  Vector x = at(0.0);
  if (kind_ == BodyKind::kHypercube) return x;
  const double total = dot(costs_, x);
  double target;
  if (total > max_total_) {
    target = max_total_;
  } else if (total < min_total_) {
    target = min_total_;
  } else {
    return x;
  }

  // phi(lambda) = <c, x(lambda)> is non-increasing; bracket the root.
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (costs_[i] <= 0.0) continue;
    if (total > target) {
      hi = std::max(hi, (y[i] - lower_[i]) / costs_[i]);
    } else {
      lo = std::min(lo, (y[i] - upper_[i]) / costs_[i]);
    }
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (dot(costs_, at(mid)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Solve the final linear piece exactly on the free set.
  const double lambda0 = 0.5 * (lo + hi);
  double fixed = 0.0, free_cy = 0.0, free_cc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double v = y[i] - lambda0 * costs_[i];
    if (costs_[i] > 0.0 && v > lower_[i] && v < upper_[i]) {
      free_cy += costs_[i] * y[i];
      free_cc += costs_[i] * costs_[i];
    } else {
      fixed += costs_[i] * std::clamp(v, lower_[i], upper_[i]);
    }
  }
  double lambda = lambda0;
  if (free_cc > 0.0) {
    const double exact = (free_cy + fixed - target) / free_cc;
    if (exact >= lo - 1e-12 && exact <= hi + 1e-12) lambda = exact;
  }
  x = at(lambda);
  if (max_violation(x) > kProjectionTol) {
    throw ProjectionError("band projection did not reach feasibility");
  }
  return x;
}

Vector ConvexBody::polytope_project(ConstSpan y) const {
  // Dykstra's alternating projections over the half-spaces and the box.
  const std::size_t sets = rows_.size() + 1;
  Vector x(y.begin(), y.end());
  std::vector<Vector> corr(sets, Vector(n_, 0.0));
  Vector prev(n_), z(n_);
  for (std::size_t cycle = 0; cycle < kProjectionIterationCap; ++cycle) {
    prev = x;
    for (std::size_t s = 0; s < sets; ++s) {
      for (std::size_t i = 0; i < n_; ++i) z[i] = x[i] + corr[s][i];
      Vector p = z;
      if (s < rows_.size()) {
        const Vector& a = rows_[s];
        const double aa = squared_norm(a);
        const double excess = dot(a, z) - rhs_[s];
        if (excess > 0.0 && aa > 0.0) axpy(-excess / aa, a, p);
      } else {
        for (double& v : p) v = std::clamp(v, 0.0, 1.0);
      }
      for (std::size_t i = 0; i < n_; ++i) corr[s][i] = z[i] - p[i];
      x = std::move(p);
    }
    if (squared_distance(x, prev) < 1e-26 && max_violation(x) <= 1e-12) return x;
  }
  throw ProjectionError("polytope projection: Dykstra did not converge within " +
                        std::to_string(kProjectionIterationCap) + " cycles");
}

Vector ConvexBody::min_inf_norm_point() const {
  if (kind_ == BodyKind::kPolytope) return polytope_min_inf_norm();
  return band_min_inf_norm();
}

Vector ConvexBody::band_min_inf_norm() const {
  // Smallest s with some x in the body and x <= s: needs s >= max lower and
  // sum_i c_i min(upper_i, s) >= min_total.
  double s = lower_.empty() ? 0.0 : *std::max_element(lower_.begin(), lower_.end());
  auto reach = [&](double level) {
    double g = 0.0;
    for (std::size_t i = 0; i < n_; ++i) g += costs_[i] * std::min(upper_[i], level);
    return g;
  };
  if (reach(s) < min_total_) {
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return upper_[a] < upper_[b]; });
    // Walk the breakpoints of the piecewise-linear reach function.
    double saturated = 0.0;
    double slope = std::accumulate(costs_.begin(), costs_.end(), 0.0);
    double found = 1.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i = order[k];
      const double seg_hi = upper_[i];
      if (seg_hi > s && slope > 0.0) {
        const double cand = (min_total_ - saturated) / slope;
        if (cand <= seg_hi) {
          found = std::max(cand, s);
          break;
        }
      }
      saturated += costs_[i] * upper_[i];
      slope -= costs_[i];
    }
    s = found;
  }
  // Lexicographically smallest point under the cap s.
  Vector cap(n_), x(n_);
  for (std::size_t i = 0; i < n_; ++i) cap[i] = std::min(upper_[i], s);
  double rest = dot(costs_, cap);
  double have = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    rest -= costs_[i] * cap[i];
    double v = lower_[i];
    if (costs_[i] > 0.0 && std::isfinite(min_total_)) {
      v = std::clamp((min_total_ - have - rest) / costs_[i], lower_[i], cap[i]);
    }
    x[i] = v;
    have += costs_[i] * v;
  }
  if (max_violation(x) > kFeasibilityTol) throw InfeasibleBodyError("min_inf_norm_point: body infeasible");
  return x;
}

Vector ConvexBody::polytope_min_inf_norm() const {
  // Variables (x, s); maximize -s subject to body rows, x <= 1, x - s <= 0.
  const std::size_t m = n_ + 1;
  std::vector<Vector> a;
  Vector b;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Vector row(m, 0.0);
    std::copy(rows_[r].begin(), rows_[r].end(), row.begin());
    a.push_back(std::move(row));
    b.push_back(rhs_[r]);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    Vector row(m, 0.0);
    row[i] = 1.0;
    a.push_back(row);
    b.push_back(1.0);
    row[n_] = -1.0;
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  Vector c(m, 0.0);
  c[n_] = -1.0;
  lp::Result r = lp::maximize(a, b, c);
  if (r.status != lp::Status::kOptimal) throw InfeasibleBodyError("min_inf_norm_point: polytope infeasible");
  const double s = r.x[n_];
  {
    Vector row(m, 0.0);
    row[n_] = 1.0;
    a.push_back(std::move(row));
    b.push_back(s + 1e-10);
  }
  // Fix coordinates one at a time at their smallest value.
  Vector x = Vector(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    Vector obj(m, 0.0);
    obj[i] = -1.0;
    lp::Result ri = lp::maximize(a, b, obj);
    if (ri.status != lp::Status::kOptimal) break;
    x.assign(ri.x.begin(), ri.x.begin() + static_cast<std::ptrdiff_t>(n_));
    Vector row(m, 0.0);
    row[i] = 1.0;
    a.push_back(std::move(row));
    b.push_back(ri.x[i] + 1e-10);
  }
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

ConvexBody ConvexBody::with_upper_cap(ConstSpan cap) const {
  require_dimension(n_, cap.size(), "ConvexBody::with_upper_cap");
  if (kind_ == BodyKind::kPolytope) {
    std::vector<Vector> rows = rows_;
    Vector rhs = rhs_;
    for (std::size_t i = 0; i < n_; ++i) {
      rows.push_back(basis(n_, i));
      rhs.push_back(std::clamp(cap[i], 0.0, 1.0));
    }
    return polytope(std::move(rows), std::move(rhs));
  }
  Vector up(n_);
  for (std::size_t i = 0; i < n_; ++i) up[i] = std::max(lower_[i], std::min(upper_[i], cap[i]));
  return box_band(lower_, std::move(up), costs_, min_total_, max_total_);
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os << body_kind_name(kind_) << "(n=" << n_;
  if (kind_ == BodyKind::kPolytope) {
    os << ", rows=" << rows_.size();
  } else if (kind_ != BodyKind::kHypercube) {
    if (uniform_costs()) {
      os << ", cost=" << costs_.front();
    } else {
      os << ", costs=weighted";
    }
    if (std::isfinite(min_total_)) os << ", min_total=" << min_total_;
    if (std::isfinite(max_total_)) os << ", max_total=" << max_total_;
  }
  os << ", D=" << diameter_ << (diameter_exact_ ? "" : " (bound)") << ")";
  return os.str();
}

}  // namespace odrs

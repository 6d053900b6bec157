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

#include "odrs/lp.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <stdexcept>

namespace odrs::lp {
namespace {

constexpr double kEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double& value() { return at(rows_, cols_); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Cost row holds reduced costs of a maximization; eliminates basic columns.
  void price_out() {
    for (std::size_t r = 0; r < rows_; ++r) {
      const double f = cost(basis_[r]);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) -= f * at(r, c);
    }
  }

  // Returns false when unbounded. Columns with allowed[c] == false never enter.
  bool optimize(const std::vector<bool>& allowed) {
    const std::size_t cap = 50000;
    for (std::size_t it = 0; it < cap; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && cost(c) > kEps) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a > kEps) best = std::min(best, rhs(r) / a);
      }
      if (!std::isfinite(best)) return false;
      std::size_t leave = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a > kEps && rhs(r) / a <= best + kEps) {
          if (leave == rows_ || basis_[r] < basis_[leave]) leave = r;
        }
      }
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration cap reached");
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result maximize(const std::vector<Vector>& a, ConstSpan b, ConstSpan c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  require_dimension(m, b.size(), "lp::maximize rhs");
  for (const auto& row : a) require_dimension(n, row.size(), "lp::maximize row");

  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) art_rows.push_back(i);
  }
  const std::size_t n_art = art_rows.size();
  const std::size_t cols = n + m + n_art;
  Tableau t(m, cols);

  std::size_t next_art = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * a[i][j];
    t.at(i, n + i) = sign;
    t.rhs(i) = sign * b[i];
    if (b[i] < 0.0) {
      t.at(i, next_art) = 1.0;
      t.basic(i) = next_art++;
    } else {
      t.basic(i) = n + i;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (n_art > 0) {
    for (std::size_t c2 = n + m; c2 < cols; ++c2) t.cost(c2) = -1.0;
    t.price_out();
    t.optimize(allowed);
    // The value cell holds minus the phase-one objective, i.e. the artificial mass.
    if (t.value() > 1e-9) return {Status::kInfeasible, {}, 0.0};
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basic(r) < n + m) continue;
      for (std::size_t c2 = 0; c2 < n + m; ++c2) {
        if (std::fabs(t.at(r, c2)) > 1e-9) {
          t.pivot(r, c2);
          break;
        }
      }
    }
    for (std::size_t c2 = n + m; c2 < cols; ++c2) allowed[c2] = false;
  }

  for (std::size_t c2 = 0; c2 <= cols; ++c2) t.cost(c2) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = c[j];
  t.price_out();
  if (!t.optimize(allowed)) return {Status::kUnbounded, {}, 0.0};

  Result res;
  res.status = Status::kOptimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basic(r) < n) res.x[t.basic(r)] = t.rhs(r);
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += c[j] * res.x[j];
  res.objective = obj;
  return res;
}

}  // namespace odrs::lp

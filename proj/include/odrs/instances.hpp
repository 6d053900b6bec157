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

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "odrs/function.hpp"
#include "odrs/rng.hpp"

namespace odrs {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed edge-list content; line() is 1-based.
class EdgeListError : public std::runtime_error {
 public:
  EdgeListError(const std::string& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 1.0;
};

struct Arc {
  std::uint32_t to;
  double w;
};

// Weighted directed graph in compressed rows, with the transpose kept for
// in-neighbour sums. Undirected inputs are stored with both arcs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  // Duplicate arcs are summed; self-loops and negative or non-finite
  // weights throw std::invalid_argument.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges, bool undirected = true);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_arcs() const { return out_.size(); }
  // Undirected edge count when the graph is symmetric.
  std::size_t num_edges() const { return out_.size() / 2; }
  std::span<const Arc> out(std::size_t i) const;
  std::span<const Arc> in(std::size_t i) const;
  double weight(std::size_t u, std::size_t v) const;
  double total_weight() const;
  bool symmetric() const;

  // Arcs with both endpoints selected.
  Graph masked(const std::vector<std::uint8_t>& keep) const;
  // Arc-wise weight sum; both graphs must have the same vertex count.
  Graph merged(const Graph& other) const;
  std::vector<Edge> arcs() const;

 private:
  void build_transpose();

  std::size_t n_ = 0;
  std::vector<std::size_t> out_start_{0};
  std::vector<Arc> out_;
  std::vector<std::size_t> in_start_{0};
  std::vector<Arc> in_;
};

// "u v [w]" per line, 0-indexed, '#' comment lines; ".gz" paths are
// decompressed on the fly.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

Graph gen_random_graph(std::size_t n, double edge_prob, double w_lo, double w_hi, std::uint64_t seed);

// F(x) = sum_i sum_{j != i} w_ij (1 - q^x_i) q^x_j with q = 1 - p.
class RevenueFunction final : public Accumulable {
 public:
  RevenueFunction(std::shared_ptr<const Graph> graph, double p);

  std::size_t dimension() const override { return graph_->num_vertices(); }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  std::string name() const override { return "revenue"; }
  std::shared_ptr<Accumulable> clone_accumulable() const override;
  bool absorb(const DRFunction& other) override;

  double p() const { return p_; }
  const Graph& graph() const { return *graph_; }
  // |ln q| * |(in + out weighted degree)|_2, a bound on |grad F| over the cube.
  double analytic_gradient_bound() const;
  // (1 - p) w_out(i) >= p w_in(i) at every vertex. Along each coordinate
  // d2F/dx_i2 = -|ln q| dF/dx_i, so this is both the DR-submodularity and the
  // monotonicity condition on the cube.
  bool dr_submodular() const;

 private:
  std::shared_ptr<const Graph> graph_;
  double p_;
  double log_q_;
};

// Per-round batches: k vertices drawn uniformly without replacement, arcs
// kept only inside the batch.
class BatchSampler {
 public:
  BatchSampler(std::shared_ptr<const Graph> graph, std::size_t k, double p, std::uint64_t seed);
  std::shared_ptr<RevenueFunction> sample();
  std::vector<std::uint8_t> sample_mask();
  std::size_t batch_size() const { return k_; }
  double p() const { return p_; }
  const Graph& graph() const { return *graph_; }

 private:
  std::shared_ptr<const Graph> graph_;
  std::size_t k_;
  double p_;
  RngStream rng_;
};

// 0.5 x^T H x + h^T x + c with H stored row-major.
class QuadraticFunction final : public Accumulable {
 public:
  QuadraticFunction(std::size_t n, Vector h_matrix, Vector h_linear, double c = 0.0);

  std::size_t dimension() const override { return n_; }
  double value(ConstSpan x) const override;
  Vector gradient(ConstSpan x) const override;
  std::string name() const override { return "quadratic"; }
  std::shared_ptr<Accumulable> clone_accumulable() const override;
  bool absorb(const DRFunction& other) override;

  // Symmetric with all Hessian entries <= 0.
  bool dr_submodular() const;
  const Vector& hessian() const { return hm_; }
  const Vector& linear() const { return hl_; }
  double offset() const { return c_; }

 private:
  std::size_t n_;
  Vector hm_;
  Vector hl_;
  double c_;
};

// Random symmetric H with entries -U[0, 1] kept with probability `density`
// (diagonal included), and h = -H 1 / 2, c = 0: non-negative on the cube and
// zero at the origin.
std::shared_ptr<QuadraticFunction> random_quadratic(std::size_t n, double density, RngStream& rng);

}  // namespace odrs

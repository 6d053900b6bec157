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

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "odrs/instances.hpp"

namespace odrs {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Line source over plain or gzip-compressed files.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), gz_(ends_with(path, ".gz")) {
    if (gz_) {
      file_ = gzopen(path.c_str(), "rb");
      if (file_ == nullptr) throw IoError("cannot open " + path);
    } else {
      in_.open(path);
      if (!in_) throw IoError("cannot open " + path);
    }
  }
  ~LineReader() {
    if (file_ != nullptr) gzclose(file_);
  }
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool next(std::string& line) {
    if (!gz_) {
      if (std::getline(in_, line)) return true;
      if (in_.bad()) throw IoError("read error on " + path_);
      return false;
    }
    line.clear();
    char buf[4096];
    while (true) {
      if (gzgets(file_, buf, sizeof(buf)) == nullptr) {
        int err = 0;
        const char* msg = gzerror(file_, &err);
        if (err != Z_OK && err != Z_STREAM_END) throw IoError("gzip error on " + path_ + ": " + msg);
        return !line.empty();
      }
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        return true;
      }
    }
  }

 private:
  std::string path_;
  bool gz_;
  std::ifstream in_;
  gzFile file_ = nullptr;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

EdgeListError::EdgeListError(const std::string& path, std::size_t line, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(std::size_t n) : n_(n), out_start_(n + 1, 0), in_start_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges, bool undirected) {
  if (n > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("Graph: too many vertices");
  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * (undirected ? 2 : 1));
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("Graph: vertex id out of range");
    if (e.u == e.v) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(e.u));
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw std::invalid_argument("Graph: negative or non-finite weight");
    arcs.push_back(e);
    if (undirected) arcs.push_back(Edge{e.v, e.u, e.w});
  }
  std::sort(arcs.begin(), arcs.end(), [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  Graph g(n);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Edge& e = arcs[k];
    if (k > 0 && arcs[k - 1].u == e.u && arcs[k - 1].v == e.v) {
      g.out_.back().w += e.w;
    } else {
      g.out_.push_back(Arc{static_cast<std::uint32_t>(e.v), e.w});
    }
    g.out_start_[e.u + 1] = g.out_.size();
  }
  for (std::size_t i = 1; i <= n; ++i) g.out_start_[i] = std::max(g.out_start_[i], g.out_start_[i - 1]);
  g.build_transpose();
  return g;
}

void Graph::build_transpose() {
  in_start_.assign(n_ + 1, 0);
  for (const Arc& a : out_) ++in_start_[a.to + 1];
  for (std::size_t i = 0; i < n_; ++i) in_start_[i + 1] += in_start_[i];
  in_.assign(out_.size(), Arc{0, 0.0});
  std::vector<std::size_t> fill(in_start_.begin(), in_start_.end() - 1);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t k = out_start_[u]; k < out_start_[u + 1]; ++k) {
      in_[fill[out_[k].to]++] = Arc{static_cast<std::uint32_t>(u), out_[k].w};
    }
  }
}

std::span<const Arc> Graph::out(std::size_t i) const {
  return std::span<const Arc>(out_).subspan(out_start_.at(i), out_start_[i + 1] - out_start_[i]);
}

std::span<const Arc> Graph::in(std::size_t i) const {
  return std::span<const Arc>(in_).subspan(in_start_.at(i), in_start_[i + 1] - in_start_[i]);
}

double Graph::weight(std::size_t u, std::size_t v) const {
  for (const Arc& a : out(u)) {
    if (a.to == v) return a.w;
  }
  return 0.0;
}

double Graph::total_weight() const {
  double s = 0.0;
  for (const Arc& a : out_) s += a.w;
  return s;
}

bool Graph::symmetric() const {
  for (std::size_t u = 0; u < n_; ++u) {
    for (const Arc& a : out(u)) {
      if (weight(a.to, u) != a.w) return false;
    }
  }
  return true;
}

Graph Graph::masked(const std::vector<std::uint8_t>& keep) const {
  if (keep.size() != n_) throw DimensionError(n_, keep.size(), "Graph::masked");
  Graph g(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    if (keep[u]) {
      for (const Arc& a : out(u)) {
        if (keep[a.to]) g.out_.push_back(a);
      }
    }
    g.out_start_[u + 1] = g.out_.size();
  }
  g.build_transpose();
  return g;
}

Graph Graph::merged(const Graph& other) const {
  if (other.n_ != n_) throw DimensionError(n_, other.n_, "Graph::merged");
  Graph g(n_);
  g.out_.reserve(out_.size() + other.out_.size());
  for (std::size_t u = 0; u < n_; ++u) {
    auto a = out(u), b = other.out(u);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].to < b[j].to)) {
        g.out_.push_back(a[i++]);
      } else if (i == a.size() || b[j].to < a[i].to) {
        g.out_.push_back(b[j++]);
      } else {
        g.out_.push_back(Arc{a[i].to, a[i].w + b[j].w});
        ++i;
        ++j;
      }
    }
    g.out_start_[u + 1] = g.out_.size();
  }
  g.build_transpose();
  return g;
}

std::vector<Edge> Graph::arcs() const {
  std::vector<Edge> out;
  out.reserve(out_.size());
  for (std::size_t u = 0; u < n_; ++u) {
    for (const Arc& a : this->out(u)) out.push_back(Edge{u, a.to, a.w});
  }
  return out;
}

Graph load_edge_list(const std::string& path) {
  LineReader reader(path);
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (reader.next(line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (toks.size() != 2 && toks.size() != 3) {
      throw EdgeListError(path, lineno, "expected 'u v' or 'u v w'");
    }
    Edge e;
    if (!parse_number(toks[0], e.u) || !parse_number(toks[1], e.v)) {
      throw EdgeListError(path, lineno, "vertex ids must be non-negative integers");
    }
    if (toks.size() == 3 && !parse_number(toks[2], e.w)) throw EdgeListError(path, lineno, "bad weight");
    if (e.u == e.v) throw EdgeListError(path, lineno, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw EdgeListError(path, lineno, "negative or non-finite weight");
    n = std::max(n, std::max(e.u, e.v) + 1);
    edges.push_back(e);
  }
  return Graph::from_edges(n, edges, true);
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ostringstream os;
  os.precision(17);
  os << "# vertices " << g.num_vertices() << " edges " << g.num_edges() << "\n";
  for (const Edge& e : g.arcs()) {
    if (e.u < e.v) os << e.u << ' ' << e.v << ' ' << e.w << '\n';
  }
  const std::string text = os.str();
  if (ends_with(path, ".gz")) {
    gzFile f = gzopen(path.c_str(), "wb");
    if (f == nullptr) throw IoError("cannot write " + path);
    const int wrote = text.empty() ? 0 : gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    const int rc = gzclose(f);
    if ((!text.empty() && wrote <= 0) || rc != Z_OK) throw IoError("gzip write failed for " + path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

Graph gen_random_graph(std::size_t n, double edge_prob, double w_lo, double w_hi, std::uint64_t seed) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("gen_random_graph: edge_prob outside [0, 1]");
  if (!(w_lo >= 0.0 && w_lo <= w_hi)) throw std::invalid_argument("gen_random_graph: need 0 <= w_lo <= w_hi");
  RngStream rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!rng.bernoulli(edge_prob)) continue;
      const double w = w_lo == w_hi ? w_lo : rng.uniform(w_lo, w_hi);
      edges.push_back(Edge{u, v, w});
    }
  }
  return Graph::from_edges(n, edges, true);
}

}  // namespace odrs

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

#include "odrs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "odrs/instances.hpp"

namespace odrs {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t as_size(const ConfigMap& m, const std::string& key) {
  const std::string& v = m.at(key);
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t as_u64(const ConfigMap& m, const std::string& key) {
  const std::string& v = m.at(key);
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "' expects an unsigned integer, got '" + v + "'");
  }
  return out;
}

double as_double(const ConfigMap& m, const std::string& key) {
  const std::string& v = m.at(key);
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("config key '" + key + "' expects a finite number, got '" + v + "'");
  }
  return out;
}

bool as_bool(const ConfigMap& m, const std::string& key) {
  const std::string& v = m.at(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

ConvexBody parse_polytope(const std::string& spec, std::size_t n) {
  // "a_1,...,a_n<=b; ..." one half-space per ';'.
  std::vector<Vector> rows;
  Vector rhs;
  std::stringstream all(spec);
  std::string part;
  while (std::getline(all, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto le = part.find("<=");
    if (le == std::string::npos) throw ConfigError("polytope row '" + part + "' lacks '<='");
    Vector row;
    std::stringstream coeffs(part.substr(0, le));
    std::string tok;
    while (std::getline(coeffs, tok, ',')) {
      tok = trim(tok);
      double v = 0.0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size()) throw ConfigError("bad polytope coefficient '" + tok + "'");
      row.push_back(v);
    }
    if (row.size() != n) {
      throw ConfigError("polytope row has " + std::to_string(row.size()) + " coefficients, expected " + std::to_string(n));
    }
    const std::string b = trim(part.substr(le + 2));
    double bv = 0.0;
    auto [p, ec] = std::from_chars(b.data(), b.data() + b.size(), bv);
    if (ec != std::errc() || p != b.data() + b.size()) throw ConfigError("bad polytope bound '" + b + "'");
    rows.push_back(std::move(row));
    rhs.push_back(bv);
  }
  if (rows.empty()) throw ConfigError("polytope body needs at least one row");
  return ConvexBody::polytope(std::move(rows), std::move(rhs));
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"algorithm", "down-closed", "down-closed | general | hypercube | doubling-down-closed | doubling-general"},
      {"body", "budget", "hypercube | budget | band | polytope"},
      {"budget", "1", "B in sum_i x_i <= B"},
      {"band_min", "0.1", "lower end of sum_i x_i for the band body"},
      {"band_max", "1", "upper end of sum_i x_i for the band body"},
      {"polytope", "", "half-spaces 'a1,...,an<=b;...' for the polytope body"},
      {"instance", "revenue", "revenue | quadratic | linear | zero"},
      {"graph", "", "edge-list path (.gz accepted); empty = generate"},
      {"n", "20", "vertices / dimension for generated instances"},
      {"edge_prob", "0.3", "edge probability of the generated graph"},
      {"w_lo", "1", "lowest generated edge weight"},
      {"w_hi", "1", "highest generated edge weight"},
      {"graph_seed", "7", "seed of the generated graph"},
      {"p", "0.01", "revenue model probability"},
      {"p_original", "0.0001", "probability used at full scale, recorded only"},
      {"batch", "8", "vertices sampled per round"},
      {"density", "0.5", "Hessian density of quadratic instances"},
      {"T", "500", "number of rounds"},
      {"L", "0", "Frank-Wolfe levels (0 = auto)"},
      {"L_cap", "64", "cap on the automatic L"},
      {"M", "0", "lattice resolution (0 = auto)"},
      {"epsilon", "0", "rounding accuracy (0 = 1/sqrt(T))"},
      {"c0", "16", "vertex budget constant of the rounding step"},
      {"sigma", "0", "standard deviation of simulated gradient noise"},
      {"oracle", "leader", "leader | ascent"},
      {"G", "0", "gradient bound (0 = estimate from a separate sample)"},
      {"seed", "1", "master seed"},
      {"replicas", "5", "independent replicas"},
      {"threads", "0", "worker threads (0 = hardware)"},
      {"out_dir", "results", "output directory (overridden by ODRS_OUTPUT_DIR)"},
      {"name", "run", "output file prefix"},
      {"format", "both", "csv | json | both"},
      {"timing", "false", "record wall-clock in elapsed_ms (breaks byte-identical output)"},
      {"hindsight", "best-of", "best-of | lattice"},
      {"hindsight_grid", "0", "lattice steps per coordinate for brute force (0 = auto)"},
      {"hindsight_fw_levels", "256", "levels of the offline Frank-Wolfe comparator"},
      {"hindsight_restarts", "32", "random starts of projected gradient ascent"},
  };
  return keys;
}

ConfigMap parse_config_text(const std::string& text, const std::string& origin) {
  ConfigMap m;
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    m[key] = trim(line.substr(eq + 1));
  }
  return m;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kDownClosed: return "down-closed";
    case Algorithm::kGeneral: return "general";
    case Algorithm::kHypercube: return "hypercube";
    case Algorithm::kDoublingDownClosed: return "doubling-down-closed";
    case Algorithm::kDoublingGeneral: return "doubling-general";
  }
  return "unknown";
}

std::string instance_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::kRevenue: return "revenue";
    case InstanceKind::kQuadratic: return "quadratic";
    case InstanceKind::kLinear: return "linear";
    case InstanceKind::kZero: return "zero";
  }
  return "unknown";
}

bool ExperimentConfig::doubling() const {
  return algorithm == Algorithm::kDoublingDownClosed || algorithm == Algorithm::kDoublingGeneral;
}

ExperimentConfig ExperimentConfig::from_map(const ConfigMap& overrides) {
  ConfigMap m;
  for (const auto& k : config_keys()) m[k.name] = k.default_value;
  for (const auto& [k, v] : overrides) {
    if (m.find(k) == m.end()) throw ConfigError("unknown config key '" + k + "'");
    m[k] = v;
  }
  ExperimentConfig c;
  const std::string& alg = m["algorithm"];
  if (alg == "down-closed") {
    c.algorithm = Algorithm::kDownClosed;
  } else if (alg == "general") {
    c.algorithm = Algorithm::kGeneral;
  } else if (alg == "hypercube") {
    c.algorithm = Algorithm::kHypercube;
  } else if (alg == "doubling-down-closed") {
    c.algorithm = Algorithm::kDoublingDownClosed;
  } else if (alg == "doubling-general") {
    c.algorithm = Algorithm::kDoublingGeneral;
  } else {
    throw ConfigError("unknown algorithm '" + alg + "'");
  }
  c.body = m["body"];
  if (c.body != "hypercube" && c.body != "budget" && c.body != "band" && c.body != "polytope") {
    throw ConfigError("unknown body '" + c.body + "'");
  }
  c.budget = as_double(m, "budget");
  c.band_min = as_double(m, "band_min");
  c.band_max = as_double(m, "band_max");
  c.polytope = m["polytope"];

  const std::string& inst = m["instance"];
  if (inst == "revenue") {
    c.instance = InstanceKind::kRevenue;
  } else if (inst == "quadratic") {
    c.instance = InstanceKind::kQuadratic;
  } else if (inst == "linear") {
    c.instance = InstanceKind::kLinear;
  } else if (inst == "zero") {
    c.instance = InstanceKind::kZero;
  } else {
    throw ConfigError("unknown instance '" + inst + "'");
  }
  c.graph_path = m["graph"];
  c.n = as_size(m, "n");
  c.edge_prob = as_double(m, "edge_prob");
  c.w_lo = as_double(m, "w_lo");
  c.w_hi = as_double(m, "w_hi");
  c.graph_seed = as_u64(m, "graph_seed");
  c.p = as_double(m, "p");
  c.p_original = as_double(m, "p_original");
  c.batch = as_size(m, "batch");
  c.density = as_double(m, "density");
  c.horizon = as_size(m, "T");
  c.levels = as_size(m, "L");
  c.level_cap = as_size(m, "L_cap");
  c.resolution = as_size(m, "M");
  c.epsilon = as_double(m, "epsilon");
  c.c0 = as_double(m, "c0");
  c.sigma = as_double(m, "sigma");
  try {
    c.oracle = parse_strategy(m["oracle"]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.gradient_bound = as_double(m, "G");
  c.seed = as_u64(m, "seed");
  c.replicas = as_size(m, "replicas");
  c.threads = as_size(m, "threads");
  c.out_dir = m["out_dir"];
  c.name = m["name"];
  const std::string& fmt = m["format"];
  if (fmt == "csv") {
    c.write_json = false;
  } else if (fmt == "json") {
    c.write_csv = false;
  } else if (fmt != "both") {
    throw ConfigError("format must be csv, json or both");
  }
  c.timing = as_bool(m, "timing");
  const std::string& hs = m["hindsight"];
  if (hs == "best-of") {
    c.hindsight = HindsightMode::kBestOf;
  } else if (hs == "lattice") {
    c.hindsight = HindsightMode::kLattice;
  } else {
    throw ConfigError("hindsight must be best-of or lattice");
  }
  c.hindsight_grid = as_size(m, "hindsight_grid");
  c.hindsight_fw_levels = as_size(m, "hindsight_fw_levels");
  c.hindsight_restarts = as_size(m, "hindsight_restarts");

  if (c.horizon == 0) throw ConfigError("T must be at least 1");
  if (c.replicas == 0) throw ConfigError("replicas must be at least 1");
  if (c.n == 0 && c.graph_path.empty()) throw ConfigError("n must be at least 1");
  if (!(c.p > 0.0 && c.p < 1.0)) throw ConfigError("p must lie in (0, 1)");
  if (c.sigma < 0.0) throw ConfigError("sigma must be >= 0");
  if (c.epsilon < 0.0 || c.c0 <= 0.0) throw ConfigError("epsilon must be >= 0 and c0 > 0");
  if (c.name.empty() || c.name.find('/') != std::string::npos) throw ConfigError("name must be a plain file prefix");
  const bool dc = c.algorithm == Algorithm::kDownClosed || c.algorithm == Algorithm::kDoublingDownClosed;
  if (dc && c.body != "budget" && c.body != "hypercube") {
    throw ConfigError("the down-closed engine runs on budget or hypercube bodies, not '" + c.body + "'");
  }
  if (c.algorithm == Algorithm::kHypercube && c.body != "hypercube") {
    throw ConfigError("the hypercube engine requires body = hypercube");
  }
  if (c.instance == InstanceKind::kRevenue && c.graph_path.empty() && c.batch > c.n) {
    throw ConfigError("batch exceeds the number of vertices");
  }
  c.resolved = m;
  return c;
}

ConvexBody ExperimentConfig::make_body(std::size_t dim) const {
  try {
    if (body == "hypercube") return ConvexBody::hypercube(dim);
    if (body == "budget") return ConvexBody::uniform_budget(dim, budget);
    if (body == "band") return ConvexBody::sum_band(dim, band_min, band_max);
    return parse_polytope(polytope, dim);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid body: ") + e.what());
  }
}

}  // namespace odrs

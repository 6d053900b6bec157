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


#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "odrs/experiment.hpp"

namespace odrs {
namespace {

void put(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string fmt(double v) {
  std::string s;
  put(s, v);
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

Metadata replica_metadata(const ExperimentConfig& config, const ExperimentResult& res, const ReplicaResult& r) {
  Metadata md = res.metadata;
  md.push_back({"replica", std::to_string(r.replica)});
  md.push_back({"stream_seed", std::to_string(r.stream_seed)});
  md.push_back({"algorithm_seed", std::to_string(r.algorithm_seed)});
  md.push_back({"hindsight_method", r.hindsight.method});
  md.push_back({"hindsight_value", fmt(r.hindsight.value)});
  md.push_back({"hindsight_point", to_string(r.hindsight.point)});
  for (const auto& [m, v] : r.hindsight.per_method) md.push_back({"hindsight_value." + m, fmt(v)});
  md.push_back({"ratio_flagged_rows", std::to_string(r.flagged_rows)});
  md.push_back({"final_ratio", fmt(r.final_ratio())});
  md.push_back({"average_regret", fmt(r.average_regret())});
  if (config.timing) md.push_back({"seconds", fmt(r.seconds)});
  return md;
}

}  // namespace

std::string format_csv(const std::vector<RoundRecord>& rows) {
  std::string out = "t,reward,cum_reward,comparator_cum,ratio,elapsed_ms\n";
  out.reserve(rows.size() * 96 + out.size());
  for (const auto& r : rows) {
    out += std::to_string(r.t);
    for (double v : {r.reward, r.cum_reward, r.comparator_cum, r.ratio, r.elapsed_ms}) {
      out += ',';
      put(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string format_json(const Metadata& metadata, const std::vector<RoundRecord>& rows) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    data.push_back({{"t", r.t},
                    {"reward", r.reward},
                    {"cum_reward", r.cum_reward},
                    {"comparator_cum", r.comparator_cum},
                    {"ratio", r.ratio},
                    {"elapsed_ms", r.elapsed_ms}});
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = std::move(meta);
  doc["columns"] = {"t", "reward", "cum_reward", "comparator_cum", "ratio", "elapsed_ms"};
  doc["rows"] = std::move(data);
  return doc.dump(1) + "\n";
}

std::string format_aggregate_csv(const ExperimentResult& result) {
  std::string out = "t,ratio_mean,ratio_std,cum_reward_mean,comparator_cum_mean\n";
  if (result.replicas.empty()) return out;
  const std::size_t T = result.replicas.front().rows.size();
  const double k = static_cast<double>(result.replicas.size());
  for (std::size_t t = 0; t < T; ++t) {
    double s = 0.0, sq = 0.0, cum = 0.0, comp = 0.0;
    for (const auto& r : result.replicas) {
      const RoundRecord& row = r.rows[t];
      s += row.ratio;
      sq += row.ratio * row.ratio;
      cum += row.cum_reward;
      comp += row.comparator_cum;
    }
    const double mean = s / k;
    out += std::to_string(t + 1);
    for (double v : {mean, std::sqrt(std::max(0.0, sq / k - mean * mean)), cum / k, comp / k}) {
      out += ',';
      put(out, v);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(resolve_output_dir(config));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  std::vector<std::string> written;
  for (const auto& r : result.replicas) {
    const std::string stem = config.name + "_r" + std::to_string(r.replica);
    if (config.write_csv) {
      const fs::path p = dir / (stem + ".csv");
      write_file(p, format_csv(r.rows));
      written.push_back(p.string());
    }
    if (config.write_json) {
      const fs::path p = dir / (stem + ".json");
      write_file(p, format_json(replica_metadata(config, result, r), r.rows));
      written.push_back(p.string());
    }
  }
  const fs::path agg = dir / (config.name + "_aggregate.csv");
  write_file(agg, format_aggregate_csv(result));
  written.push_back(agg.string());
  return written;
}

}  // namespace odrs

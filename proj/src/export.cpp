// SPDX-License-Identifier: Apache-2.0
//
// semota - multi-sensor remote state estimation over MIMO fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "semota/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "semota/error.hpp"

#ifndef SEMOTA_VERSION
#define SEMOTA_VERSION "unknown"
#endif

namespace semota {

using nlohmann::json;

std::string code_version() { return SEMOTA_VERSION; }

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " +
                          ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_slot_csv(const std::filesystem::path& path, const MonteCarloResult& r) {
  std::ofstream out = open_for_write(path);
  out << "slot,mean_nmse,se_nmse,mean_power,se_power,mean_trace_sigma\n";
  for (std::size_t k = 0; k < r.nmse.mean.size(); ++k) {
    out << k << ',' << format_number(r.nmse.mean[k]) << ',' << format_number(r.nmse.se[k]) << ','
        << format_number(r.power.mean[k]) << ',' << format_number(r.power.se[k]) << ','
        << format_number(r.trace_sigma.mean[k]) << '\n';
  }
  finish(out, path);
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result) {
  std::ofstream out = open_for_write(path);
  out << "M,policy,mean_nmse,se_nmse,mean_power,se_power,sigma1,sigma2\n";
  for (const auto& row : result.rows) {
    out << row.sensors << ',' << to_string(row.policy) << ',' << format_number(row.mean_nmse)
        << ',' << format_number(row.se_nmse) << ',' << format_number(row.mean_power) << ','
        << format_number(row.se_power) << ',' << optional_number(row.sigma1) << ','
        << optional_number(row.sigma2) << '\n';
  }
  finish(out, path);
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
}

json make_manifest(const std::string& command, const ExperimentConfig& cfg) {
  return json{{"manifest_version", 1},
              {"command", command},
              {"code_version", code_version()},
              {"master_seed", cfg.master_seed},
              {"config", config_to_json(cfg)}};
}

json sweep_point_to_json(const SweepPoint& p) {
  const ChannelStats& s = p.setup.stats;
  json thresholds = {{"sigma1", p.tuning.sigma1}, {"sigma2", p.tuning.sigma2}};
  const auto grid = [](const GridSearchResult& g) {
    json pts = json::array();
    for (const auto& [th, v] : g.evaluations) pts.push_back({th, number_or_null(v)});
    return json{{"best_threshold", g.best_threshold},
                {"best_value", g.best_value},
                {"evaluations", pts}};
  };
  if (p.tuning.aloha) thresholds["aloha_grid"] = grid(*p.tuning.aloha);
  if (p.tuning.tdma) thresholds["tdma_grid"] = grid(*p.tuning.tdma);
  return json{{"M", p.setup.sensors},
              {"suite_seed", p.setup.suite_seed},
              {"channel_stats",
               {{"alpha_bar", s.alpha_bar},
                {"alpha_se", number_or_null(s.alpha_se)},
                {"beta_bar", s.beta_bar},
                {"beta_se", number_or_null(s.beta_se)},
                {"n_samples", s.n_samples},
                {"seed", s.seed},
                {"full_rank_fraction", s.full_rank_fraction},
                {"cached", p.setup.stats_cached}}},
              {"thresholds", thresholds}};
}

json run_summary_to_json(const PolicyRun& run) {
  const MonteCarloResult& r = run.result;
  json j = {{"policy", to_string(run.policy)},
            {"runs", r.runs},
            {"first_episode_seed", r.seeds.empty() ? json(nullptr) : json(r.seeds.front())},
            {"mean_nmse", number_or_null(r.avg_nmse.mean)},
            {"se_nmse", number_or_null(r.avg_nmse.se)},
            {"mean_power", number_or_null(r.avg_power.mean)},
            {"se_power", number_or_null(r.avg_power.se)},
            {"mean_proxy_power", number_or_null(r.avg_proxy_power.mean)},
            {"mean_total_cost", number_or_null(r.total_cost.mean)}};
  if (run.sigma1) j["sigma1"] = *run.sigma1;
  if (run.sigma2) j["sigma2"] = *run.sigma2;
  return j;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error("csv: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& cell = rows.at(row).at(column(name));
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  if (used != cell.size()) throw Error("csv: bad number '" + cell + "'");
  return v;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw IoError("'" + path.string() + "': row with " + std::to_string(cells.size()) +
                    " fields, expected " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace semota

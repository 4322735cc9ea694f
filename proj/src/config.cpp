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

#include "semota/config.hpp"

#include <fstream>
#include <sstream>

#include "semota/error.hpp"

namespace semota {

using nlohmann::json;

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::kSemotaExact: return "semota-exact";
    case Policy::kSemotaGreedy: return "semota-greedy";
    case Policy::kDpOracle: return "dp-oracle";
    case Policy::kAloha: return "aloha";
    case Policy::kTdma: return "tdma";
    case Policy::kOta: return "ota";
    case Policy::kSilent: return "silent";
  }
  return "unknown";
}

Policy parse_policy(std::string_view name) {
  for (Policy p : {Policy::kSemotaExact, Policy::kSemotaGreedy, Policy::kDpOracle,
                   Policy::kAloha, Policy::kTdma, Policy::kOta, Policy::kSilent}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

bool is_semota(Policy policy) {
  return policy == Policy::kSemotaExact || policy == Policy::kSemotaGreedy;
}

Matrix default_plant_matrix() {
  Matrix a(3, 3);
  a << 1.04, 0.03, 0.01,
       0.22, 0.48, 0.03,
       0.021, 0.004, 0.78;
  return a;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::string_view what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ConfigError(std::string(what) + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row.at(static_cast<std::size_t>(c));
      if (!v.is_number()) throw ConfigError(std::string(what) + ": non-numeric entry");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j, std::string_view what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(what) + ": non-numeric entry");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json default_config_json() {
  return json{
      {"plant",
       {{"A", matrix_to_json(default_plant_matrix())},
        {"W", matrix_to_json(Matrix::Identity(3, 3))},
        {"sigma0", nullptr},
        {"xhat0", nullptr},
        {"x0", nullptr}}},
      {"M", 8},
      {"N_t", 2},
      {"N_r", 2},
      {"K", 200},
      {"gamma", 0.4},
      {"policy", "semota-exact"},
      {"policies", {"semota-exact", "aloha", "tdma", "ota"}},
      {"M_list", {2, 4, 6, 8}},
      {"runs", 50},
      {"master_seed", 1},
      {"zero_noise", false},
      {"sensors", {{"source", "random-gaussian"}, {"C", nullptr}}},
      {"stats", {{"n_samples", 10000}, {"seed", nullptr}, {"rank_tol", 1e-9}}},
      {"scheduler", {{"exhaustive_cap", 15}, {"sweep_cap", 0}, {"n_mc", 64}, {"budget", 1e7}}},
      {"baseline",
       {{"sigma1", 1.0},
        {"sigma2", 1.0},
        {"aloha_tx_prob", 1.0},
        {"tune", true},
        {"grid_lo", 1.0},
        {"grid_hi", 10.0},
        {"grid_step", 0.5}}},
      {"validate", {{"quick", false}}},
  };
}

void merge_config(json& base, const json& user, const std::string& prefix) {
  if (!user.is_object()) throw ConfigError("configuration must be a JSON object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown config key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object() && it.value().is_object()) {
      merge_config(slot, it.value(), key);
    } else {
      slot = it.value();
    }
  }
}

void apply_override(json& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not KEY=VALUE");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));

  json* node = &cfg;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(part)) {
      throw ConfigError("unknown config key '" + key + "' in override");
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  *node = std::move(value);
}

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::vector<Policy> parse_policies(const json& j) {
  std::vector<Policy> out;
  if (!j.is_array()) throw ConfigError("policies must be an array");
  for (const auto& p : j) out.push_back(parse_policy(p.get<std::string>()));
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const json& user) {
  json j = default_config_json();
  merge_config(j, user);

  ExperimentConfig cfg;
  try {
    const json& plant = j.at("plant");
    cfg.a = matrix_from_json(plant.at("A"), "plant.A");
    cfg.w = matrix_from_json(plant.at("W"), "plant.W");
    if (!plant.at("sigma0").is_null()) cfg.sigma0 = matrix_from_json(plant.at("sigma0"), "plant.sigma0");
    if (!plant.at("xhat0").is_null()) cfg.xhat0 = vector_from_json(plant.at("xhat0"), "plant.xhat0");
    if (!plant.at("x0").is_null()) cfg.x0 = vector_from_json(plant.at("x0"), "plant.x0");

    cfg.sensors = get_as<int>(j, "M");
    cfg.n_t = get_as<int>(j, "N_t");
    cfg.n_r = get_as<int>(j, "N_r");
    cfg.horizon = get_as<int>(j, "K");
    cfg.gamma = get_as<double>(j, "gamma");
    cfg.policy = parse_policy(get_as<std::string>(j, "policy"));
    cfg.policies = parse_policies(j.at("policies"));
    cfg.sensor_counts = get_as<std::vector<int>>(j, "M_list");
    cfg.runs = get_as<int>(j, "runs");
    cfg.master_seed = get_as<std::uint64_t>(j, "master_seed");
    cfg.zero_noise = get_as<bool>(j, "zero_noise");

    const json& sensors = j.at("sensors");
    const auto source = get_as<std::string>(sensors, "source");
    if (source == "random-gaussian") {
      cfg.sensor_source = SensorSource::kRandomGaussian;
    } else if (source == "explicit") {
      cfg.sensor_source = SensorSource::kExplicit;
      if (!sensors.at("C").is_array()) throw ConfigError("sensors.C must list the observation matrices");
      for (const auto& c : sensors.at("C")) cfg.explicit_c.push_back(matrix_from_json(c, "sensors.C"));
    } else {
      throw ConfigError("sensors.source must be 'random-gaussian' or 'explicit'");
    }

    const json& stats = j.at("stats");
    cfg.stats.n_samples = get_as<std::size_t>(stats, "n_samples");
    if (!stats.at("seed").is_null()) cfg.stats.seed = get_as<std::uint64_t>(stats, "seed");
    cfg.stats.rank_tol = get_as<double>(stats, "rank_tol");

    const json& sched = j.at("scheduler");
    cfg.scheduler.exhaustive_cap = get_as<std::size_t>(sched, "exhaustive_cap");
    cfg.scheduler.sweep_cap = get_as<std::size_t>(sched, "sweep_cap");
    cfg.scheduler.n_mc = get_as<int>(sched, "n_mc");
    cfg.scheduler.budget = get_as<double>(sched, "budget");

    const json& base = j.at("baseline");
    cfg.baseline.sigma1 = get_as<double>(base, "sigma1");
    cfg.baseline.sigma2 = get_as<double>(base, "sigma2");
    cfg.baseline.aloha_tx_prob = get_as<double>(base, "aloha_tx_prob");
    cfg.baseline.tune = get_as<bool>(base, "tune");
    cfg.baseline.grid_lo = get_as<double>(base, "grid_lo");
    cfg.baseline.grid_hi = get_as<double>(base, "grid_hi");
    cfg.baseline.grid_step = get_as<double>(base, "grid_step");

    cfg.validate_quick = get_as<bool>(j.at("validate"), "quick");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j = default_config_json();
  j["plant"]["A"] = matrix_to_json(cfg.a);
  j["plant"]["W"] = matrix_to_json(cfg.w);
  j["plant"]["sigma0"] = cfg.sigma0 ? matrix_to_json(*cfg.sigma0) : json(nullptr);
  j["plant"]["xhat0"] = cfg.xhat0 ? vector_to_json(*cfg.xhat0) : json(nullptr);
  j["plant"]["x0"] = cfg.x0 ? vector_to_json(*cfg.x0) : json(nullptr);
  j["M"] = cfg.sensors;
  j["N_t"] = cfg.n_t;
  j["N_r"] = cfg.n_r;
  j["K"] = cfg.horizon;
  j["gamma"] = cfg.gamma;
  j["policy"] = to_string(cfg.policy);
  j["policies"] = json::array();
  for (Policy p : cfg.policies) j["policies"].push_back(to_string(p));
  j["M_list"] = cfg.sensor_counts;
  j["runs"] = cfg.runs;
  j["master_seed"] = cfg.master_seed;
  j["zero_noise"] = cfg.zero_noise;
  if (cfg.sensor_source == SensorSource::kExplicit) {
    j["sensors"]["source"] = "explicit";
    j["sensors"]["C"] = json::array();
    for (const auto& c : cfg.explicit_c) j["sensors"]["C"].push_back(matrix_to_json(c));
  }
  j["stats"]["n_samples"] = cfg.stats.n_samples;
  j["stats"]["seed"] = cfg.stats.seed ? json(*cfg.stats.seed) : json(nullptr);
  j["stats"]["rank_tol"] = cfg.stats.rank_tol;
  j["scheduler"] = {{"exhaustive_cap", cfg.scheduler.exhaustive_cap},
                    {"sweep_cap", cfg.scheduler.sweep_cap},
                    {"n_mc", cfg.scheduler.n_mc},
                    {"budget", cfg.scheduler.budget}};
  j["baseline"] = {{"sigma1", cfg.baseline.sigma1},
                   {"sigma2", cfg.baseline.sigma2},
                   {"aloha_tx_prob", cfg.baseline.aloha_tx_prob},
                   {"tune", cfg.baseline.tune},
                   {"grid_lo", cfg.baseline.grid_lo},
                   {"grid_hi", cfg.baseline.grid_hi},
                   {"grid_step", cfg.baseline.grid_step}};
  j["validate"]["quick"] = cfg.validate_quick;
  return j;
}

void ExperimentConfig::validate() const {
  if (a.rows() != a.cols() || a.rows() == 0) throw ConfigError("plant.A must be square and non-empty");
  if (w.rows() != a.rows() || w.cols() != a.cols()) throw ConfigError("plant.W must match plant.A");
  const Eigen::Index s = a.rows();
  if (sigma0 && (sigma0->rows() != s || sigma0->cols() != s)) throw ConfigError("plant.sigma0 must be SxS");
  if (xhat0 && xhat0->size() != s) throw ConfigError("plant.xhat0 must have length S");
  if (x0 && x0->size() != s) throw ConfigError("plant.x0 must have length S");
  if (sensors < 1) throw ConfigError("M must be >= 1");
  if (n_t < 1 || n_r < 1) throw ConfigError("N_t and N_r must be >= 1");
  if (horizon < 1) throw ConfigError("K must be >= 1");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  for (int m : sensor_counts) {
    if (m < 1) throw ConfigError("every entry of M_list must be >= 1");
  }
  if (sensor_source == SensorSource::kExplicit) {
    if (static_cast<int>(explicit_c.size()) != sensors) {
      throw ConfigError("sensors.C must hold exactly M observation matrices");
    }
    for (const auto& c : explicit_c) {
      if (c.rows() != n_t || c.cols() != s) throw ConfigError("every sensors.C entry must be N_t x S");
    }
  }
  if (stats.n_samples < 1) throw ConfigError("stats.n_samples must be >= 1");
  if (!(stats.rank_tol > 0.0 && stats.rank_tol < 1.0)) throw ConfigError("stats.rank_tol must lie in (0, 1)");
  if (scheduler.n_mc < 1) throw ConfigError("scheduler.n_mc must be >= 1");
  BaselineConfig{BaselineKind::kAloha, baseline.sigma1, baseline.sigma2, baseline.aloha_tx_prob}.validate();
  if (!(baseline.grid_step > 0.0) || !(baseline.grid_lo <= baseline.grid_hi)) {
    throw ConfigError("baseline grid requires grid_lo <= grid_hi and grid_step > 0");
  }
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& overrides,
                             std::optional<std::uint64_t> seed) {
  json j = default_config_json();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file '" + path->string() + "'");
    json user;
    try {
      user = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config file '" + path->string() + "' is not valid JSON: " + e.what());
    }
    // A results manifest carries the full resolved config under "config".
    if (user.is_object() && user.contains("manifest_version") && user.contains("config")) {
      user = user.at("config");
    }
    merge_config(j, user);
  }
  if (seed) j["master_seed"] = *seed;
  for (const auto& o : overrides) apply_override(j, o);
  return config_from_json(j);
}

}  // namespace semota

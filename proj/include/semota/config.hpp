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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "semota/baselines.hpp"
#include "semota/linalg.hpp"

namespace semota {

enum class Policy { kSemotaExact, kSemotaGreedy, kDpOracle, kAloha, kTdma, kOta, kSilent };

std::string to_string(Policy policy);
Policy parse_policy(std::string_view name);
bool is_semota(Policy policy);

enum class SensorSource { kRandomGaussian, kExplicit };

struct StatsSettings {
  std::size_t n_samples = 10000;
  // Unset: derived from (master_seed, "channel-stats", M).
  std::optional<std::uint64_t> seed;
  double rank_tol = 1e-9;
};

struct SchedulerSettings {
  std::size_t exhaustive_cap = 15;
  std::size_t sweep_cap = 0;
  int n_mc = 64;
  double budget = 1e7;
};

struct BaselineSettings {
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double aloha_tx_prob = 1.0;
  // Tune sigma1 / sigma2 by grid search before comparing policies.
  bool tune = true;
  double grid_lo = 1.0;
  double grid_hi = 10.0;
  double grid_step = 0.5;
};

struct ExperimentConfig {
  Matrix a;
  Matrix w;
  std::optional<Matrix> sigma0;  // default I_S
  std::optional<Vector> xhat0;   // default 0
  std::optional<Vector> x0;      // default drawn N(0, I_S) per episode

  int sensors = 8;  // M
  int n_t = 2;
  int n_r = 2;
  int horizon = 200;  // K
  double gamma = 0.4;
  Policy policy = Policy::kSemotaExact;
  std::vector<Policy> policies;
  std::vector<int> sensor_counts;  // M_list for sweeps
  int runs = 50;
  std::uint64_t master_seed = 1;
  bool zero_noise = false;

  SensorSource sensor_source = SensorSource::kRandomGaussian;
  std::vector<Matrix> explicit_c;

  StatsSettings stats;
  SchedulerSettings scheduler;
  BaselineSettings baseline;
  bool validate_quick = false;

  Eigen::Index state_dim() const { return a.rows(); }
  void validate() const;
};

// Plant matrix used by default (3x3, one mildly unstable mode).
Matrix default_plant_matrix();

// Full default configuration, every recognised key present (nullable keys
// as null).
nlohmann::json default_config_json();

// Strict conversion: keys absent from default_config_json() are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Merges `user` onto `base`, rejecting unknown keys.
void merge_config(nlohmann::json& base, const nlohmann::json& user,
                  const std::string& prefix = "");

// Applies "dotted.key=value". The value is parsed as JSON when possible and
// taken as a string otherwise. Unknown keys raise ConfigError.
void apply_override(nlohmann::json& cfg, std::string_view assignment);

// Loads the defaults, merges the file (a config or a results manifest) when
// given, then applies overrides in order.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& overrides = {},
                             std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, std::string_view what);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j, std::string_view what);

}  // namespace semota

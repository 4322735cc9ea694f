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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "semota/baselines.hpp"
#include "semota/channel_stats.hpp"
#include "semota/config.hpp"
#include "semota/monte_carlo.hpp"

namespace semota {

// Sensors and channel constants for one sensor count M. The suite depends
// only on (master_seed, M), never on the policy.
struct SensorSetup {
  int sensors = 0;
  std::uint64_t suite_seed = 0;
  SensorSuite suite;
  ChannelStats stats;
  bool stats_cached = false;
};

std::uint64_t suite_seed(const ExperimentConfig& cfg, int sensors);
std::uint64_t stats_seed(const ExperimentConfig& cfg, int sensors);

PlantModel make_plant(const ExperimentConfig& cfg);
// Random-Gaussian suites come from stream (suite_seed, "sensors"); explicit
// suites use the first M configured matrices.
SensorSuite build_suite(const ExperimentConfig& cfg, int sensors);

// Estimates (or loads from `cache`) the channel constants for the suite.
SensorSetup prepare_setup(const ExperimentConfig& cfg, int sensors,
                          const std::optional<std::filesystem::path>& cache = std::nullopt);

Scenario make_scenario(const ExperimentConfig& cfg, const SensorSetup& setup, Policy policy,
                       double sigma1, double sigma2);

struct ThresholdTuning {
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  std::optional<GridSearchResult> aloha;
  std::optional<GridSearchResult> tdma;
};

// Grid-searches sigma1 (when ALOHA is in `policies`) and sigma2 (TDMA) on
// the horizon-averaged mean NMSE. Every grid point reuses the same episode
// seeds. Without baseline.tune the configured thresholds are returned.
ThresholdTuning tune_thresholds(const ExperimentConfig& cfg, const SensorSetup& setup,
                                const std::vector<Policy>& policies, unsigned jobs);

struct PolicyRun {
  Policy policy = Policy::kOta;
  std::optional<double> sigma1;  // set for ALOHA
  std::optional<double> sigma2;  // set for TDMA
  MonteCarloResult result;
};

PolicyRun run_policy(const ExperimentConfig& cfg, const SensorSetup& setup, Policy policy,
                     const ThresholdTuning& tuning, unsigned jobs, bool keep_episodes = false);

struct SweepRow {
  int sensors = 0;
  Policy policy = Policy::kOta;
  double mean_nmse = 0.0;
  double se_nmse = 0.0;
  double mean_power = 0.0;
  double se_power = 0.0;
  double mean_proxy_power = 0.0;
  double se_proxy_power = 0.0;
  std::optional<double> sigma1;
  std::optional<double> sigma2;
};

struct SweepPoint {
  SensorSetup setup;
  ThresholdTuning tuning;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // M-major, policies in the given order
  std::vector<SweepPoint> points;
};

SweepResult sweep_sensors(const ExperimentConfig& cfg, const std::vector<int>& sensor_counts,
                          const std::vector<Policy>& policies, unsigned jobs,
                          const std::optional<std::filesystem::path>& cache = std::nullopt);

// Per-slot episode-averaged power of every policy at M = cfg.sensors.
struct PowerTraceResult {
  SweepPoint point;
  std::vector<PolicyRun> runs;
};

PowerTraceResult power_trace(const ExperimentConfig& cfg, const std::vector<Policy>& policies,
                             unsigned jobs,
                             const std::optional<std::filesystem::path>& cache = std::nullopt);

}  // namespace semota

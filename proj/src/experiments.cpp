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

#include "semota/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "semota/error.hpp"
#include "semota/rng.hpp"

namespace semota {

std::uint64_t suite_seed(const ExperimentConfig& cfg, int sensors) {
  return derive_seed(cfg.master_seed, "sensors", static_cast<std::uint64_t>(sensors));
}

std::uint64_t stats_seed(const ExperimentConfig& cfg, int sensors) {
  if (cfg.stats.seed) return *cfg.stats.seed;
  return derive_seed(cfg.master_seed, "channel-stats", static_cast<std::uint64_t>(sensors));
}

PlantModel make_plant(const ExperimentConfig& cfg) { return PlantModel(cfg.a, cfg.w); }

SensorSuite build_suite(const ExperimentConfig& cfg, int sensors) {
  if (sensors < 1) throw ConfigError("sensor count must be >= 1");
  if (cfg.sensor_source == SensorSource::kExplicit) {
    if (static_cast<std::size_t>(sensors) > cfg.explicit_c.size()) {
      throw ConfigError("explicit sensors.C holds fewer than " + std::to_string(sensors) +
                        " matrices");
    }
    std::vector<Matrix> c(cfg.explicit_c.begin(), cfg.explicit_c.begin() + sensors);
    return SensorSuite(std::move(c), cfg.n_t, cfg.state_dim());
  }
  RngStream rng(suite_seed(cfg, sensors), "sensors");
  return SensorSuite::random_gaussian(static_cast<std::size_t>(sensors), cfg.n_t,
                                      cfg.state_dim(), rng);
}

SensorSetup prepare_setup(const ExperimentConfig& cfg, int sensors,
                          const std::optional<std::filesystem::path>& cache) {
  SensorSetup setup{sensors, suite_seed(cfg, sensors), build_suite(cfg, sensors), {}, false};
  const PlantModel plant = make_plant(cfg);
  const std::uint64_t seed = stats_seed(cfg, sensors);
  const std::string key = channel_stats_key(setup.suite, cfg.n_r, cfg.stats.n_samples, seed);
  if (cache) {
    if (auto hit = load_cached_stats(*cache, key)) {
      setup.stats = *hit;
      setup.stats_cached = true;
      return setup;
    }
  }
  setup.stats = estimate_channel_stats(plant, setup.suite, cfg.n_r, cfg.stats.n_samples, seed,
                                       cfg.stats.rank_tol);
  if (cache) store_cached_stats(*cache, key, setup.stats);
  return setup;
}

Scenario make_scenario(const ExperimentConfig& cfg, const SensorSetup& setup, Policy policy,
                       double sigma1, double sigma2) {
  Scenario sc(make_plant(cfg), setup.suite);
  sc.n_r = cfg.n_r;
  sc.horizon = cfg.horizon;
  sc.gamma = cfg.gamma;
  sc.policy = policy;
  sc.sigma1 = sigma1;
  sc.sigma2 = sigma2;
  sc.aloha_tx_prob = cfg.baseline.aloha_tx_prob;
  sc.stats = setup.stats;
  sc.semota.exhaustive_cap = cfg.scheduler.exhaustive_cap;
  sc.semota.sweep_cap = cfg.scheduler.sweep_cap;
  sc.semota.rank_tol = cfg.stats.rank_tol;
  sc.dp.n_mc = cfg.scheduler.n_mc;
  sc.dp.budget = cfg.scheduler.budget;
  sc.zero_noise = cfg.zero_noise;
  if (cfg.sigma0) sc.sigma0 = *cfg.sigma0;
  if (cfg.xhat0) sc.xhat0 = *cfg.xhat0;
  sc.x0 = cfg.x0;
  return sc;
}

ThresholdTuning tune_thresholds(const ExperimentConfig& cfg, const SensorSetup& setup,
                                const std::vector<Policy>& policies, unsigned jobs) {
  ThresholdTuning t;
  t.sigma1 = cfg.baseline.sigma1;
  t.sigma2 = cfg.baseline.sigma2;
  if (!cfg.baseline.tune) return t;
  const auto wants = [&](Policy p) {
    return std::find(policies.begin(), policies.end(), p) != policies.end();
  };
  const auto& b = cfg.baseline;
  if (wants(Policy::kAloha)) {
    t.aloha = grid_search_threshold(BaselineKind::kAloha, b.grid_lo, b.grid_hi, b.grid_step,
                                    [&](double th) {
                                      const Scenario sc =
                                          make_scenario(cfg, setup, Policy::kAloha, th, t.sigma2);
                                      return monte_carlo(sc, cfg.runs, cfg.master_seed, jobs)
                                          .avg_nmse.mean;
                                    });
    t.sigma1 = t.aloha->best_threshold;
  }
  if (wants(Policy::kTdma)) {
    t.tdma = grid_search_threshold(BaselineKind::kTdma, b.grid_lo, b.grid_hi, b.grid_step,
                                   [&](double th) {
                                     const Scenario sc =
                                         make_scenario(cfg, setup, Policy::kTdma, t.sigma1, th);
                                     return monte_carlo(sc, cfg.runs, cfg.master_seed, jobs)
                                         .avg_nmse.mean;
                                   });
    t.sigma2 = t.tdma->best_threshold;
  }
  return t;
}

PolicyRun run_policy(const ExperimentConfig& cfg, const SensorSetup& setup, Policy policy,
                     const ThresholdTuning& tuning, unsigned jobs, bool keep_episodes) {
  PolicyRun run;
  run.policy = policy;
  if (policy == Policy::kAloha) run.sigma1 = tuning.sigma1;
  if (policy == Policy::kTdma) run.sigma2 = tuning.sigma2;
  const Scenario sc = make_scenario(cfg, setup, policy, tuning.sigma1, tuning.sigma2);
  run.result = monte_carlo(sc, cfg.runs, cfg.master_seed, jobs, keep_episodes);
  return run;
}

SweepResult sweep_sensors(const ExperimentConfig& cfg, const std::vector<int>& sensor_counts,
                          const std::vector<Policy>& policies, unsigned jobs,
                          const std::optional<std::filesystem::path>& cache) {
  SweepResult out;
  for (int m : sensor_counts) {
    SweepPoint point{prepare_setup(cfg, m, cache), {}};
    point.tuning = tune_thresholds(cfg, point.setup, policies, jobs);
    for (Policy p : policies) {
      const PolicyRun run = run_policy(cfg, point.setup, p, point.tuning, jobs);
      const MonteCarloResult& r = run.result;
      out.rows.push_back({m, p, r.avg_nmse.mean, r.avg_nmse.se, r.avg_power.mean,
                          r.avg_power.se, r.avg_proxy_power.mean, r.avg_proxy_power.se,
                          run.sigma1, run.sigma2});
    }
    out.points.push_back(std::move(point));
  }
  return out;
}

PowerTraceResult power_trace(const ExperimentConfig& cfg, const std::vector<Policy>& policies,
                             unsigned jobs, const std::optional<std::filesystem::path>& cache) {
  PowerTraceResult out{{prepare_setup(cfg, cfg.sensors, cache), {}}, {}};
  out.point.tuning = tune_thresholds(cfg, out.point.setup, policies, jobs);
  for (Policy p : policies) {
    out.runs.push_back(run_policy(cfg, out.point.setup, p, out.point.tuning, jobs));
  }
  return out;
}

}  // namespace semota

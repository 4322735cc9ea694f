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
#include <optional>
#include <vector>

#include "semota/approx_scheduler.hpp"
#include "semota/baselines.hpp"
#include "semota/channel_stats.hpp"
#include "semota/config.hpp"
#include "semota/dp_scheduler.hpp"
#include "semota/model.hpp"

namespace semota {

// Everything one episode needs, fully resolved (suite drawn, statistics
// estimated, thresholds fixed).
struct Scenario {
  PlantModel plant;
  SensorSuite suite;
  Eigen::Index n_r = 2;
  int horizon = 200;
  double gamma = 0.4;
  Policy policy = Policy::kSemotaExact;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double aloha_tx_prob = 1.0;
  ChannelStats stats;
  SemotaOptions semota;
  MonteCarloConfig dp;
  bool zero_noise = false;
  Matrix sigma0;
  Vector xhat0;
  // Unset: x_0 ~ N(0, I), the first draws of the episode's "plant-noise" stream.
  std::optional<Vector> x0;

  // sigma0 = I, xhat0 = 0.
  Scenario(PlantModel plant_model, SensorSuite sensors);
  std::size_t sensors() const { return suite.size(); }
};

struct RunMetrics {
  std::uint64_t seed = 0;
  // Length-K series, slot k = 0..K-1.
  std::vector<double> nmse;        // posterior estimate
  std::vector<double> nmse_prior;  // prior (one-step prediction) estimate
  std::vector<double> power;       // sum over transmitters of ||z_m||^2
  std::vector<double> proxy_power; // sum over transmitters of Tr(C_m C_m^T)
  std::vector<double> trace_sigma;       // Tr of the prior covariance
  std::vector<double> trace_sigma_post;  // Tr of the posterior covariance
  std::vector<double> sq_error;          // ||x_k - xhat_k^post||^2
  std::vector<double> active;            // number of transmitters
  double terminal_trace = 0.0;  // Tr(Sigma_K)
  double total_cost = 0.0;
  // min over delta of Q^a_0 at slot 0 (semota policies only, else NaN).
  double min_qa_first_slot = 0.0;
};

// ||x_est - x_true||^2 / max(||x_true||^2, 1e-12).
double nmse(const Vector& x_true, const Vector& x_est);

// sum_k [Tr(Sigma_k) + gamma * proxy_k] + Tr(Sigma_K), summed in slot order.
double problem_cost(const std::vector<double>& trace_sigma,
                    const std::vector<double>& proxy_power, double gamma,
                    double terminal_trace);

// One K-slot episode. Streams derived from `seed`: "plant-noise", "channel",
// "rx-noise", "policy". Only "policy" is touched by the
// scheduling rule, so channels and noises are common across policies.
RunMetrics run_episode(const Scenario& scenario, std::uint64_t seed);

}  // namespace semota

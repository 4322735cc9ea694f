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
#include <vector>

#include "semota/episode.hpp"

namespace semota {

// Per-slot mean and standard error across episodes. se is NaN with one run.
struct SeriesSummary {
  std::vector<double> mean;
  std::vector<double> se;
};

// Mean and standard error over episodes of a per-episode scalar.
struct ScalarSummary {
  double mean = 0.0;
  double se = 0.0;
};

struct MonteCarloResult {
  int runs = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds;

  SeriesSummary nmse;
  SeriesSummary nmse_prior;
  SeriesSummary power;
  SeriesSummary proxy_power;
  SeriesSummary trace_sigma;
  SeriesSummary sq_error;
  SeriesSummary trace_sigma_post;

  // Horizon averages (slot mean first, then episode mean).
  ScalarSummary avg_nmse;
  ScalarSummary avg_nmse_prior;
  ScalarSummary avg_power;
  ScalarSummary avg_proxy_power;
  ScalarSummary avg_trace_sigma;
  ScalarSummary total_cost;
  ScalarSummary min_qa_first_slot;

  // Kept only when requested.
  std::vector<RunMetrics> episodes;

  bool has_standard_errors() const { return runs >= 2; }
};

// Seed of episode i: derive_seed(master_seed, "episode", i). Seed sets are
// nested, so the first n episodes of a larger run are the n-run episodes.
std::uint64_t episode_seed(std::uint64_t master_seed, std::size_t index);

// Runs `runs` episodes on up to `jobs` threads and reduces them in episode
// index order, so the result does not depend on `jobs`. A failing episode
// aborts the run; the error names its index and seed.
MonteCarloResult monte_carlo(const Scenario& scenario, int runs,
                             std::uint64_t master_seed, unsigned jobs = 1,
                             bool keep_episodes = false);

}  // namespace semota

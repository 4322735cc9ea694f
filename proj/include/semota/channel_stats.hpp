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

#include "semota/gram.hpp"
#include "semota/model.hpp"

namespace semota {

inline constexpr std::size_t kDefaultStatsSamples = 10000;

// Population constants alpha_bar = E[alpha] and beta_bar = E[beta] under
// all-sensors-active fading, estimated by Monte Carlo.
struct ChannelStats {
  double alpha_bar = 0.0;
  double beta_bar = 0.0;
  double alpha_se = 0.0;
  double beta_se = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  // Fraction of samples whose all-active Gram had full rank S.
  double full_rank_fraction = 0.0;

  // The future-cost sums grow with horizon when alpha_bar >= 1.
  bool contracting() const { return alpha_bar < 1.0; }
};

// Draws n_samples i.i.d. channel sets from stream (seed, "channel-stats")
// and averages alpha_of / beta_of of the all-active aggregated channel.
ChannelStats estimate_channel_stats(const PlantModel& model,
                                    const SensorSuite& suite, Eigen::Index n_r,
                                    std::size_t n_samples, std::uint64_t seed,
                                    double rank_tol = kDefaultRankTol);

// Cache key (suite fingerprint, N_r, n_samples, seed).
std::string channel_stats_key(const SensorSuite& suite, Eigen::Index n_r,
                              std::size_t n_samples, std::uint64_t seed);

// JSON file holding a key -> stats map. Missing file or key gives nullopt.
std::optional<ChannelStats> load_cached_stats(const std::filesystem::path& file,
                                              const std::string& key);
void store_cached_stats(const std::filesystem::path& file, const std::string& key,
                        const ChannelStats& stats);

}  // namespace semota

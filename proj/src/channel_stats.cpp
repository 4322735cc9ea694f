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

#include "semota/channel_stats.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "semota/accumulate.hpp"
#include "semota/error.hpp"

namespace semota {

ChannelStats estimate_channel_stats(const PlantModel& model,
                                    const SensorSuite& suite, Eigen::Index n_r,
                                    std::size_t n_samples, std::uint64_t seed,
                                    double rank_tol) {
  if (n_samples < 1) throw PreconditionError("estimate_channel_stats: n_samples must be >= 1");
  if (suite.state_dim() != model.state_dim()) {
    throw DimensionError("estimate_channel_stats: suite and plant disagree on S");
  }
  RngStream rng(seed, "channel-stats");
  const ScheduleDecision all = ScheduleDecision::all_active(suite.size());
  RunningStats alpha;
  RunningStats beta;
  std::size_t full_rank = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const ChannelDraw draw = draw_channels(suite, n_r, rng);
    const GramDecomposition d = gram_decompose(all, draw, rank_tol);
    alpha.add(alpha_of(d, model.a()));
    beta.add(beta_of(d, model.a_norm_sq()));
    if (d.rank == d.dim()) ++full_rank;
  }
  ChannelStats out;
  out.alpha_bar = alpha.mean();
  out.beta_bar = beta.mean();
  out.alpha_se = n_samples > 1 ? alpha.standard_error() : 0.0;
  out.beta_se = n_samples > 1 ? beta.standard_error() : 0.0;
  out.n_samples = n_samples;
  out.seed = seed;
  out.full_rank_fraction = static_cast<double>(full_rank) / static_cast<double>(n_samples);
  return out;
}

std::string channel_stats_key(const SensorSuite& suite, Eigen::Index n_r,
                              std::size_t n_samples, std::uint64_t seed) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%016llx-nr%lld-n%zu-s%llu",
                static_cast<unsigned long long>(suite.fingerprint()),
                static_cast<long long>(n_r), n_samples,
                static_cast<unsigned long long>(seed));
  return buf;
}

namespace {

nlohmann::json read_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    // A corrupt cache is treated as empty and rewritten on the next store.
    return nlohmann::json::object();
  }
}

}  // namespace

std::optional<ChannelStats> load_cached_stats(const std::filesystem::path& file,
                                              const std::string& key) {
  const nlohmann::json cache = read_cache(file);
  if (!cache.contains(key)) return std::nullopt;
  const auto& e = cache.at(key);
  ChannelStats s;
  s.alpha_bar = e.at("alpha_bar").get<double>();
  s.beta_bar = e.at("beta_bar").get<double>();
  s.alpha_se = e.at("alpha_se").get<double>();
  s.beta_se = e.at("beta_se").get<double>();
  s.n_samples = e.at("n_samples").get<std::size_t>();
  s.seed = e.at("seed").get<std::uint64_t>();
  s.full_rank_fraction = e.at("full_rank_fraction").get<double>();
  return s;
}

void store_cached_stats(const std::filesystem::path& file, const std::string& key,
                        const ChannelStats& stats) {
  nlohmann::json cache = read_cache(file);
  cache[key] = {{"alpha_bar", stats.alpha_bar},   {"beta_bar", stats.beta_bar},
                {"alpha_se", stats.alpha_se},     {"beta_se", stats.beta_se},
                {"n_samples", stats.n_samples},   {"seed", stats.seed},
                {"full_rank_fraction", stats.full_rank_fraction}};
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw Error("cannot write channel-stats cache: " + file.string());
  out << cache.dump(2) << '\n';
}

}  // namespace semota

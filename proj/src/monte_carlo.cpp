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

#include "semota/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <thread>

#include "semota/accumulate.hpp"
#include "semota/error.hpp"
#include "semota/rng.hpp"

namespace semota {

std::uint64_t episode_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, "episode", index);
}

namespace {

using SeriesOf = std::function<const std::vector<double>&(const RunMetrics&)>;

SeriesSummary summarize_series(const std::vector<RunMetrics>& eps, const SeriesOf& get) {
  const std::size_t len = get(eps.front()).size();
  std::vector<RunningStats> acc(len);
  for (const auto& ep : eps) {
    const auto& series = get(ep);
    for (std::size_t k = 0; k < len; ++k) acc[k].add(series[k]);
  }
  SeriesSummary out;
  out.mean.resize(len);
  out.se.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    out.mean[k] = acc[k].mean();
    out.se[k] = acc[k].standard_error();
  }
  return out;
}

double slot_average(const std::vector<double>& v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

ScalarSummary summarize_scalar(const std::vector<RunMetrics>& eps,
                               const std::function<double(const RunMetrics&)>& get) {
  RunningStats acc;
  for (const auto& ep : eps) acc.add(get(ep));
  return {acc.mean(), acc.standard_error()};
}

[[noreturn]] void rethrow_with_seed(std::exception_ptr ptr, std::size_t index, std::uint64_t seed) {
  const std::string where =
      "episode " + std::to_string(index) + " (seed " + std::to_string(seed) + "): ";
  try {
    std::rethrow_exception(ptr);
  } catch (const NumericalError& e) {
    throw NumericalError(where + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  } catch (const SizeError& e) {
    throw SizeError(where + e.what());
  } catch (const std::exception& e) {
    throw Error(where + e.what());
  }
}

}  // namespace

MonteCarloResult monte_carlo(const Scenario& scenario, int runs, std::uint64_t master_seed,
                             unsigned jobs, bool keep_episodes) {
  if (runs < 1) throw PreconditionError("monte_carlo: runs must be >= 1");
  const auto n = static_cast<std::size_t>(runs);

  MonteCarloResult out;
  out.runs = runs;
  out.master_seed = master_seed;
  out.seeds.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.seeds[i] = episode_seed(master_seed, i);

  std::vector<RunMetrics> eps(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        eps[i] = run_episode(scenario, out.seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) rethrow_with_seed(errors[i], i, out.seeds[i]);
  }

  out.nmse = summarize_series(eps, [](const RunMetrics& r) -> const auto& { return r.nmse; });
  out.nmse_prior =
      summarize_series(eps, [](const RunMetrics& r) -> const auto& { return r.nmse_prior; });
  out.power = summarize_series(eps, [](const RunMetrics& r) -> const auto& { return r.power; });
  out.proxy_power =
      summarize_series(eps, [](const RunMetrics& r) -> const auto& { return r.proxy_power; });
  out.trace_sigma =
      summarize_series(eps, [](const RunMetrics& r) -> const auto& { return r.trace_sigma; });
  out.sq_error =
      summarize_series(eps, [](const RunMetrics& r) -> const auto& { return r.sq_error; });
  out.trace_sigma_post = summarize_series(
      eps, [](const RunMetrics& r) -> const auto& { return r.trace_sigma_post; });

  out.avg_nmse = summarize_scalar(eps, [](const RunMetrics& r) { return slot_average(r.nmse); });
  out.avg_nmse_prior =
      summarize_scalar(eps, [](const RunMetrics& r) { return slot_average(r.nmse_prior); });
  out.avg_power = summarize_scalar(eps, [](const RunMetrics& r) { return slot_average(r.power); });
  out.avg_proxy_power =
      summarize_scalar(eps, [](const RunMetrics& r) { return slot_average(r.proxy_power); });
  out.avg_trace_sigma =
      summarize_scalar(eps, [](const RunMetrics& r) { return slot_average(r.trace_sigma); });
  out.total_cost = summarize_scalar(eps, [](const RunMetrics& r) { return r.total_cost; });
  out.min_qa_first_slot =
      summarize_scalar(eps, [](const RunMetrics& r) { return r.min_qa_first_slot; });

  if (keep_episodes) out.episodes = std::move(eps);
  return out;
}

}  // namespace semota

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

#include "semota/baselines.hpp"

#include <cmath>
#include <sstream>

#include "semota/error.hpp"

namespace semota {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kAloha: return "aloha";
    case BaselineKind::kTdma: return "tdma";
    case BaselineKind::kOta: return "ota";
  }
  return "unknown";
}

void BaselineConfig::validate() const {
  if (!(sigma1 >= 0.0) || !(sigma2 >= 0.0)) {
    throw ConfigError("baseline thresholds must be >= 0");
  }
  if (!(aloha_tx_prob > 0.0 && aloha_tx_prob <= 1.0)) {
    throw ConfigError("aloha_tx_prob must lie in (0, 1]");
  }
}

AlohaOutcome aloha_schedule(std::span<const Vector> z_all, const BaselineConfig& cfg,
                            RngStream& rng) {
  const std::size_t sensors = z_all.size();
  AlohaOutcome out;
  out.delta = ScheduleDecision::none(sensors);
  out.transmitters = ScheduleDecision::none(sensors);
  std::size_t count = 0;
  std::size_t last = 0;
  for (std::size_t m = 0; m < sensors; ++m) {
    const double u = rng.uniform();
    if (z_all[m].norm() >= cfg.sigma1 && u < cfg.aloha_tx_prob) {
      out.transmitters.set(m, true);
      last = m;
      ++count;
    }
  }
  if (count == 1) {
    out.delta.set(last, true);
  } else if (count > 1) {
    out.collided = true;
  }
  return out;
}

ScheduleDecision tdma_schedule(const Matrix& sigma, const BaselineConfig& cfg,
                               std::size_t sensors, RngStream& rng) {
  ScheduleDecision delta = ScheduleDecision::none(sensors);
  if (sensors == 0) return delta;
  const std::size_t pick = rng.uniform_index(sensors);
  if (spectral_norm(sigma) >= cfg.sigma2) delta.set(pick, true);
  return delta;
}

ScheduleDecision ota_schedule(std::size_t sensors) {
  return ScheduleDecision::all_active(sensors);
}

std::vector<double> threshold_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw PreconditionError("grid step must be > 0");
  if (!(lo <= hi)) throw PreconditionError("grid requires lo <= hi");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

GridSearchResult grid_search_threshold(BaselineKind kind, double lo, double hi,
                                       double step,
                                       const std::function<double(double)>& eval_fn) {
  GridSearchResult result;
  bool found = false;
  for (double t : threshold_grid(lo, hi, step)) {
    const double v = eval_fn(t);
    result.evaluations.emplace_back(t, v);
    if (!std::isfinite(v)) continue;
    if (!found || v < result.best_value) {
      result.best_threshold = t;
      result.best_value = v;
      found = true;
    }
  }
  if (!found) {
    std::ostringstream msg;
    msg << to_string(kind) << " threshold search: no grid point in [" << lo << ", "
        << hi << "] produced a finite NMSE";
    throw SearchError(msg.str());
  }
  return result;
}

}  // namespace semota

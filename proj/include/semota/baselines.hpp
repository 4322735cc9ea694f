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

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semota/linalg.hpp"
#include "semota/rng.hpp"
#include "semota/schedule.hpp"

namespace semota {

enum class BaselineKind { kAloha, kTdma, kOta };

std::string to_string(BaselineKind kind);

struct BaselineConfig {
  BaselineKind kind = BaselineKind::kOta;
  // ALOHA eligibility threshold on ||z_m||.
  double sigma1 = 1.0;
  // TDMA trigger threshold on the spectral norm of the prior covariance.
  double sigma2 = 1.0;
  // Per-eligible-sensor transmit probability for slotted ALOHA.
  double aloha_tx_prob = 1.0;

  void validate() const;
};

struct AlohaOutcome {
  // Schedule seen by the estimator: at most one active sensor.
  ScheduleDecision delta;
  // Sensors that actually transmitted (and pay power), including collided ones.
  ScheduleDecision transmitters;
  bool collided = false;
};

// Threshold-triggered slotted ALOHA. Eligible sensors (||z_m|| >= sigma1)
// transmit with probability aloha_tx_prob; a lone transmitter is delivered,
// two or more collide and the slot carries no measurement. One uniform draw
// per sensor is consumed every slot, eligible or not.
AlohaOutcome aloha_schedule(std::span<const Vector> z_all, const BaselineConfig& cfg,
                            RngStream& rng);

// Covariance-triggered random TDMA: when ||Sigma|| >= sigma2 one sensor
// chosen uniformly transmits. The selection is drawn every slot.
ScheduleDecision tdma_schedule(const Matrix& sigma, const BaselineConfig& cfg,
                               std::size_t sensors, RngStream& rng);

// Conventional over-the-air aggregation: every sensor transmits.
ScheduleDecision ota_schedule(std::size_t sensors);

struct GridSearchResult {
  double best_threshold = 0.0;
  double best_value = 0.0;
  // (threshold, value) for every grid point, ascending.
  std::vector<std::pair<double, double>> evaluations;
};

// Grid points lo, lo + step, ... up to hi (inclusive within 1e-9 * step).
std::vector<double> threshold_grid(double lo, double hi, double step);

// Minimizes eval_fn over threshold_grid(lo, hi, step); ties go to the
// smaller threshold and non-finite values are skipped. SearchError when no
// grid point gives a finite value.
GridSearchResult grid_search_threshold(BaselineKind kind, double lo, double hi,
                                       double step,
                                       const std::function<double(double)>& eval_fn);

}  // namespace semota

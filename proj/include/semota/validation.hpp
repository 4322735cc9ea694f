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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "semota/model.hpp"
#include "semota/schedule.hpp"

namespace semota {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  // Headline number of the check (worst error, violation count, slack...).
  double metric = std::numeric_limits<double>::quiet_NaN();
};

// Posterior covariance produced by the measurement update under test.
using PosteriorFn =
    std::function<Matrix(const Matrix& sigma, const ScheduleDecision& delta, const ChannelDraw& draw)>;

// The Joseph-form update's posterior covariance (the default PosteriorFn).
Matrix joseph_posterior(const Matrix& sigma, const ScheduleDecision& delta, const ChannelDraw& draw);

// Random instances with S <= 4, M <= 3: the update's posterior against the
// information form, and predict-after-update against riccati_map + W, both
// to relative 1e-8.
CheckResult check_riccati_equivalence(std::size_t instances, std::uint64_t seed,
                                      const PosteriorFn& posterior = joseph_posterior);

// Random (Sigma, H, delta <= delta'): Tr f(delta') <= Tr f(delta) + 1e-9.
CheckResult check_active_set_monotonicity(std::size_t instances, std::uint64_t seed);

// Default plant, S = 3, N_t = N_r = 2: mean of Tr f(Sigma, all-active) over
// `draws` channel sets is <= beta_bar + alpha_bar Tr(Sigma) + 3 SE for every
// random Sigma and every M in `sensor_counts`.
CheckResult check_appendix_bound(std::size_t n_sigma, std::size_t draws,
                                 const std::vector<int>& sensor_counts,
                                 std::size_t stats_samples, std::uint64_t seed);

// Small random instances (S <= 2, M <= 2, K <= 3) at k = 0:
// q_value <= qa_value + 3 SE.
CheckResult check_q_below_qa(std::size_t instances, int n_mc, std::size_t stats_samples,
                             std::uint64_t seed);

// Default plant, S = 3, M = 4, K = 10, N_t = N_r = 2, gamma = 0.4: mean realized
// cost under exact SemOTA <= mean min Q^a_0 + 3 SE (SE of the paired
// per-episode difference).
CheckResult check_certificate(std::size_t episodes, std::size_t stats_samples,
                              std::uint64_t seed, unsigned jobs);

// All five suites at full or reduced scale. Failures do not stop the run.
std::vector<CheckResult> run_validation(bool quick, std::uint64_t seed, unsigned jobs);

}  // namespace semota

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
#include <optional>

#include "semota/channel_stats.hpp"
#include "semota/estimator.hpp"
#include "semota/gram.hpp"
#include "semota/horizon.hpp"

namespace semota {

// Q^a_k: closed-form upper bound on the DP Q-function. With n = K - k,
//
//   Q^a = Tr(Sigma) + gamma * sum_m delta_m Tr(C_m C_m^T) + Tr(f) + n Tr(W)
//       + [k <= K-2] * ( (n-1) gamma sum_m Tr(C_m C_m^T) + (n-1) beta_bar
//                        + (sum_{i=2..n} abar^{i-1}) alpha(delta, H) Tr(f)
//                        + sum_{i=1..n-1} (n-i) abar^i Tr(W)
//                        + sum_{i=1..n-1} abar^i beta(delta, H)
//                        + sum_{i=1..n-2} (n-i-1) abar^i beta_bar )
//
// The abar sums are finite and evaluated term by term in long double.
double qa_value(const Matrix& sigma, const ScheduleDecision& delta,
                const ChannelDraw& draw, const HorizonContext& ctx,
                const ChannelStats& stats, double rank_tol = kDefaultRankTol);

// Evaluates Q^a for many candidate schedules of one slot, sharing the
// inversion of Sigma and the horizon-only coefficients.
class QaEvaluator {
 public:
  QaEvaluator(const Matrix& sigma, const ChannelDraw& draw,
              const HorizonContext& ctx, const ChannelStats& stats,
              double rank_tol = kDefaultRankTol);

  double operator()(const ScheduleDecision& delta) const;
  std::size_t sensors() const { return draw_.size(); }

 private:
  InformationForm info_;
  const ChannelDraw& draw_;
  const HorizonContext& ctx_;
  double rank_tol_;
  bool has_future_;
  // Constant part: Tr(Sigma) + n Tr(W) + future terms not depending on delta.
  long double constant_ = 0.0L;
  // sum_{i=1..n-1} abar^i, the coefficient of both alpha * Tr(f) and beta.
  long double geometric_ = 0.0L;
};

enum class SemotaMode { kExact, kGreedy };

struct SemotaOptions {
  std::size_t exhaustive_cap = 15;
  // Maximum number of single-sensor flips in greedy mode; 0 means 10 * M.
  std::size_t sweep_cap = 0;
  double rank_tol = kDefaultRankTol;
};

struct SemotaResult {
  ScheduleDecision delta;
  double qa = 0.0;
  std::size_t evaluations = 0;
};

// Minimizes Q^a over delta. Exact mode enumerates all 2^M schedules
// (M <= exhaustive_cap, else SizeError). Greedy mode runs coordinate descent
// from the all-active schedule. Ties go to fewer active sensors, then to the
// lexicographically smallest delta.
SemotaResult semota_solve(const Matrix& sigma, const ChannelDraw& draw,
                          const HorizonContext& ctx, const ChannelStats& stats,
                          SemotaMode mode, const SemotaOptions& options = {});

ScheduleDecision semota_schedule(const Matrix& sigma, const ChannelDraw& draw,
                                 const HorizonContext& ctx,
                                 const ChannelStats& stats, SemotaMode mode,
                                 const SemotaOptions& options = {});

// True when (value_a, delta_a) should be preferred over (value_b, delta_b)
// under the tie-breaking rule above.
bool prefer_schedule(double value_a, const ScheduleDecision& delta_a,
                     double value_b, const ScheduleDecision& delta_b);

}  // namespace semota

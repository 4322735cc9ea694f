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

#include "semota/estimator.hpp"
#include "semota/horizon.hpp"
#include "semota/rng.hpp"
#include "semota/schedule.hpp"

namespace semota {

// Sampling for the nested expectation in the DP future-cost term.
struct MonteCarloConfig {
  int n_mc = 64;
  // Refuse when (2^M * n_mc)^(K-k-1) leaf evaluations exceed this.
  double budget = 1e7;
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

// Leaf evaluations needed to expand the future-cost recursion from slot k.
double dp_work(const HorizonContext& ctx, const MonteCarloConfig& mc);

// Monte-Carlo estimate of the future-cost correction Delta_k(Sigma, delta, H):
//
//   Delta_k = E_{H'} [ min_{delta'} ( gamma * power(delta') + Tr f(Sigma', delta', H')
//                                     + Delta_{k+1}(Sigma', delta', H') ) ],
//   Sigma' = f(Sigma, delta, H) + W,    Delta_{K-1} = 0.
//
// Each level averages n_mc fresh channel sets; se is the standard error of
// the outermost average. Exactly {0, 0} at k = K - 1.
Estimate dp_delta(const Matrix& sigma, const ScheduleDecision& delta,
                  const ChannelDraw& draw, const HorizonContext& ctx,
                  const MonteCarloConfig& mc, RngStream& rng);

// Q_k = Tr(Sigma) + gamma * power(delta) + Tr f + (K-k) Tr(W) + [k <= K-2] Delta_k.
Estimate q_value(const Matrix& sigma, const ScheduleDecision& delta,
                 const ChannelDraw& draw, const HorizonContext& ctx,
                 const MonteCarloConfig& mc, RngStream& rng);

struct DpResult {
  ScheduleDecision delta;
  Estimate q;
};

// Minimizes q_value over all 2^M schedules. Every candidate is evaluated on
// the same random numbers. Ties go to fewer active sensors, then
// lexicographically smallest delta.
DpResult dp_solve(const Matrix& sigma, const ChannelDraw& draw,
                  const HorizonContext& ctx, const MonteCarloConfig& mc,
                  RngStream& rng);

ScheduleDecision dp_optimal_schedule(const Matrix& sigma, const ChannelDraw& draw,
                                     const HorizonContext& ctx,
                                     const MonteCarloConfig& mc, RngStream& rng);

}  // namespace semota

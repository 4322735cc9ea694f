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

#include "semota/dp_scheduler.hpp"

#include <cmath>
#include <sstream>

#include "semota/accumulate.hpp"
#include "semota/approx_scheduler.hpp"
#include "semota/error.hpp"

namespace semota {

namespace {

void check_budget(const HorizonContext& ctx, const MonteCarloConfig& mc) {
  if (mc.n_mc < 1) throw PreconditionError("n_mc must be >= 1");
  if (ctx.suite.size() > 62) throw SizeError("DP oracle: too many sensors to enumerate");
  const double work = dp_work(ctx, mc);
  if (work > mc.budget) {
    std::ostringstream msg;
    msg << "DP oracle refused: " << work << " leaf evaluations exceed budget "
        << mc.budget << " (M=" << ctx.suite.size() << ", n_mc=" << mc.n_mc
        << ", K-k-1=" << ctx.remaining() - 1 << ")";
    throw SizeError(msg.str());
  }
}

// E_{H'} min_{delta'} [ gamma power(delta') + Tr f(sigma_in, delta', H')
//                       + Delta_slot(sigma_in, delta', H') ]
// for a decision taken at `slot`.
RunningStats expected_min(const Matrix& sigma_in, int slot,
                          const HorizonContext& ctx, const MonteCarloConfig& mc,
                          RngStream& rng) {
  const std::size_t sensors = ctx.suite.size();
  const std::uint64_t combos = std::uint64_t{1} << sensors;
  const InformationForm info(sigma_in);
  const bool recurse = slot <= ctx.horizon - 2;
  RunningStats samples;
  for (int j = 0; j < mc.n_mc; ++j) {
    const ChannelDraw next = draw_channels(ctx.suite, ctx.n_r, rng);
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      const ScheduleDecision d = ScheduleDecision::from_mask(mask, sensors);
      const Matrix f = info.riccati(next.aggregate(d), ctx.plant.a());
      double v = ctx.gamma * ctx.suite.proxy_power(d) + f.trace();
      if (recurse) {
        v += expected_min(f + ctx.plant.w(), slot + 1, ctx, mc, rng).mean();
      }
      if (mask == 0 || v < best) best = v;
    }
    samples.add(best);
  }
  return samples;
}

}  // namespace

double dp_work(const HorizonContext& ctx, const MonteCarloConfig& mc) {
  const double branching = std::ldexp(static_cast<double>(mc.n_mc),
                                      static_cast<int>(ctx.suite.size()));
  return std::pow(branching, ctx.remaining() - 1);
}

Estimate dp_delta(const Matrix& sigma, const ScheduleDecision& delta,
                  const ChannelDraw& draw, const HorizonContext& ctx,
                  const MonteCarloConfig& mc, RngStream& rng) {
  if (ctx.terminal()) return {0.0, 0.0};
  check_budget(ctx, mc);
  const Matrix next_sigma =
      riccati_map(sigma, draw.aggregate(delta), ctx.plant.a()) + ctx.plant.w();
  const RunningStats s = expected_min(next_sigma, ctx.slot + 1, ctx, mc, rng);
  return {s.mean(), mc.n_mc > 1 ? s.standard_error() : 0.0};
}

Estimate q_value(const Matrix& sigma, const ScheduleDecision& delta,
                 const ChannelDraw& draw, const HorizonContext& ctx,
                 const MonteCarloConfig& mc, RngStream& rng) {
  const Matrix f = riccati_map(sigma, draw.aggregate(delta), ctx.plant.a());
  double value = sigma.trace() + ctx.gamma * ctx.suite.proxy_power(delta) + f.trace() +
                 ctx.remaining() * ctx.trace_w();
  Estimate out{value, 0.0};
  if (!ctx.terminal()) {
    const Estimate d = dp_delta(sigma, delta, draw, ctx, mc, rng);
    out.value += d.value;
    out.se = d.se;
  }
  return out;
}

DpResult dp_solve(const Matrix& sigma, const ChannelDraw& draw,
                  const HorizonContext& ctx, const MonteCarloConfig& mc,
                  RngStream& rng) {
  check_budget(ctx, mc);
  const std::size_t sensors = draw.size();
  const std::uint64_t combos = std::uint64_t{1} << sensors;
  const RngStream start = rng;
  DpResult best;
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    ScheduleDecision d = ScheduleDecision::from_mask(mask, sensors);
    RngStream local = start;
    const Estimate q = q_value(sigma, d, draw, ctx, mc, local);
    if (mask == 0 || prefer_schedule(q.value, d, best.q.value, best.delta)) {
      best.q = q;
      best.delta = std::move(d);
    }
    // Leave the caller's stream past the consumed draws.
    rng = local;
  }
  return best;
}

ScheduleDecision dp_optimal_schedule(const Matrix& sigma, const ChannelDraw& draw,
                                     const HorizonContext& ctx,
                                     const MonteCarloConfig& mc, RngStream& rng) {
  return dp_solve(sigma, draw, ctx, mc, rng).delta;
}

}  // namespace semota

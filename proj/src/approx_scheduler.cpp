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

#include "semota/approx_scheduler.hpp"

#include <cmath>
#include <sstream>

#include "semota/error.hpp"

namespace semota {

QaEvaluator::QaEvaluator(const Matrix& sigma, const ChannelDraw& draw,
                         const HorizonContext& ctx, const ChannelStats& stats,
                         double rank_tol)
    : info_(sigma), draw_(draw), ctx_(ctx), rank_tol_(rank_tol) {
  if (draw.size() != ctx.suite.size()) {
    throw DimensionError("Q^a: channel draw and sensor suite disagree on M");
  }
  const int n = ctx.remaining();
  const long double abar = stats.alpha_bar;
  const long double trace_w = ctx.trace_w();
  const long double bbar = stats.beta_bar;

  constant_ = static_cast<long double>(info_.sigma().trace()) + n * trace_w;
  has_future_ = ctx.slot <= ctx.horizon - 2;
  if (!has_future_) return;

  long double power = 1.0L;
  long double weighted_w = 0.0L;
  long double weighted_b = 0.0L;
  for (int i = 1; i <= n - 1; ++i) {
    power *= abar;  // abar^i
    geometric_ += power;
    weighted_w += static_cast<long double>(n - i) * power;
    if (i <= n - 2) weighted_b += static_cast<long double>(n - i - 1) * power;
  }
  constant_ += static_cast<long double>(n - 1) * ctx.gamma * ctx.suite.total_power_trace();
  constant_ += static_cast<long double>(n - 1) * bbar;
  constant_ += weighted_w * trace_w;
  constant_ += weighted_b * bbar;
}

double QaEvaluator::operator()(const ScheduleDecision& delta) const {
  const Matrix g = draw_.aggregate(delta);
  const double trace_f = info_.riccati(g, ctx_.plant.a()).trace();
  long double value = constant_ + ctx_.gamma * ctx_.suite.proxy_power(delta) + trace_f;
  if (has_future_) {
    const GramDecomposition d = gram_decompose(g, rank_tol_);
    const long double alpha = alpha_of(d, ctx_.plant.a());
    const long double beta = beta_of(d, ctx_.plant.a_norm_sq());
    value += geometric_ * alpha * trace_f + geometric_ * beta;
  }
  const double out = static_cast<double>(value);
  if (!std::isfinite(out)) {
    std::ostringstream msg;
    msg << "Q^a is not finite at slot " << ctx_.slot << " for delta=" << delta.str();
    throw NumericalError(msg.str());
  }
  return out;
}

double qa_value(const Matrix& sigma, const ScheduleDecision& delta,
                const ChannelDraw& draw, const HorizonContext& ctx,
                const ChannelStats& stats, double rank_tol) {
  return QaEvaluator(sigma, draw, ctx, stats, rank_tol)(delta);
}

bool prefer_schedule(double value_a, const ScheduleDecision& delta_a,
                     double value_b, const ScheduleDecision& delta_b) {
  if (value_a != value_b) return value_a < value_b;
  const auto count_a = delta_a.active_count();
  const auto count_b = delta_b.active_count();
  if (count_a != count_b) return count_a < count_b;
  return lexicographically_less(delta_a, delta_b);
}

namespace {

SemotaResult solve_exact(const QaEvaluator& qa, std::size_t sensors) {
  SemotaResult best;
  const std::uint64_t combos = std::uint64_t{1} << sensors;
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    ScheduleDecision delta = ScheduleDecision::from_mask(mask, sensors);
    const double v = qa(delta);
    ++best.evaluations;
    if (mask == 0 || prefer_schedule(v, delta, best.qa, best.delta)) {
      best.qa = v;
      best.delta = std::move(delta);
    }
  }
  return best;
}

SemotaResult solve_greedy(const QaEvaluator& qa, std::size_t sensors,
                          std::size_t sweep_cap) {
  SemotaResult r;
  r.delta = ScheduleDecision::all_active(sensors);
  r.qa = qa(r.delta);
  r.evaluations = 1;
  const std::size_t cap = sweep_cap ? sweep_cap : 10 * sensors;
  std::size_t flips = 0;
  bool changed = true;
  while (changed && flips < cap) {
    changed = false;
    for (std::size_t m = 0; m < sensors && flips < cap; ++m) {
      ScheduleDecision off = r.delta;
      off.set(m, false);
      ScheduleDecision on = r.delta;
      on.set(m, true);
      const bool currently_on = r.delta[m];
      const double v_other = qa(currently_on ? off : on);
      ++r.evaluations;
      const double v_off = currently_on ? v_other : r.qa;
      const double v_on = currently_on ? r.qa : v_other;
      // Ties favor switching the sensor off.
      const bool want_on = v_on < v_off;
      if (want_on != currently_on) {
        r.delta = want_on ? on : off;
        r.qa = want_on ? v_on : v_off;
        ++flips;
        changed = true;
      }
    }
  }
  return r;
}

}  // namespace

SemotaResult semota_solve(const Matrix& sigma, const ChannelDraw& draw,
                          const HorizonContext& ctx, const ChannelStats& stats,
                          SemotaMode mode, const SemotaOptions& options) {
  const QaEvaluator qa(sigma, draw, ctx, stats, options.rank_tol);
  const std::size_t sensors = draw.size();
  if (mode == SemotaMode::kExact) {
    if (sensors > options.exhaustive_cap) {
      std::ostringstream msg;
      msg << "exact schedule enumeration refused: M=" << sensors
          << " exceeds exhaustive_cap=" << options.exhaustive_cap;
      throw SizeError(msg.str());
    }
    return solve_exact(qa, sensors);
  }
  return solve_greedy(qa, sensors, options.sweep_cap);
}

ScheduleDecision semota_schedule(const Matrix& sigma, const ChannelDraw& draw,
                                 const HorizonContext& ctx,
                                 const ChannelStats& stats, SemotaMode mode,
                                 const SemotaOptions& options) {
  return semota_solve(sigma, draw, ctx, stats, mode, options).delta;
}

}  // namespace semota

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

#include "semota/episode.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "semota/error.hpp"
#include "semota/estimator.hpp"
#include "semota/horizon.hpp"

namespace semota {

Scenario::Scenario(PlantModel plant_model, SensorSuite sensors)
    : plant(std::move(plant_model)),
      suite(std::move(sensors)),
      sigma0(Matrix::Identity(plant.state_dim(), plant.state_dim())),
      xhat0(Vector::Zero(plant.state_dim())) {}

double nmse(const Vector& x_true, const Vector& x_est) {
  if (x_true.size() != x_est.size()) throw DimensionError("nmse: length mismatch");
  constexpr double kFloor = 1e-12;
  return (x_est - x_true).squaredNorm() / std::max(x_true.squaredNorm(), kFloor);
}

double problem_cost(const std::vector<double>& trace_sigma,
                    const std::vector<double>& proxy_power, double gamma,
                    double terminal_trace) {
  if (trace_sigma.size() != proxy_power.size()) {
    throw DimensionError("problem_cost: series length mismatch");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < trace_sigma.size(); ++k) {
    total += trace_sigma[k] + gamma * proxy_power[k];
  }
  return total + terminal_trace;
}

namespace {

struct SlotDecision {
  ScheduleDecision delta;         // seen by the estimator
  ScheduleDecision transmitters;  // pays power
  bool collided = false;
};

}  // namespace

RunMetrics run_episode(const Scenario& sc, std::uint64_t seed) {
  const Eigen::Index s = sc.plant.state_dim();
  const std::size_t m_count = sc.suite.size();
  const int k_total = sc.horizon;
  if (k_total < 1) throw PreconditionError("run_episode: horizon must be >= 1");

  RngStream plant_rng(seed, "plant-noise");
  RngStream channel_rng(seed, "channel");
  RngStream rx_rng(seed, "rx-noise");
  RngStream policy_rng(seed, "policy");

  SimState state;
  state.x = sc.x0 ? *sc.x0 : draw_initial_state(s, plant_rng);
  if (state.x.size() != s) throw DimensionError("run_episode: x0 has the wrong length");
  EstimatorState est = EstimatorState::initial(sc.xhat0, sc.sigma0);

  HorizonContext ctx(sc.plant, sc.suite, sc.n_r, k_total, 0, sc.gamma);
  BaselineConfig aloha{BaselineKind::kAloha, sc.sigma1, sc.sigma2, sc.aloha_tx_prob};
  BaselineConfig tdma{BaselineKind::kTdma, sc.sigma1, sc.sigma2, sc.aloha_tx_prob};

  RunMetrics out;
  out.seed = seed;
  const auto reserve = static_cast<std::size_t>(k_total);
  for (auto* v : {&out.nmse, &out.nmse_prior, &out.power, &out.proxy_power, &out.trace_sigma,
                  &out.trace_sigma_post, &out.sq_error, &out.active}) {
    v->reserve(reserve);
  }
  out.min_qa_first_slot = std::numeric_limits<double>::quiet_NaN();

  std::vector<Vector> z(m_count);
  for (int k = 0; k < k_total; ++k) {
    try {
      const ChannelDraw draw = draw_channels(sc.suite, sc.n_r, channel_rng);
      for (std::size_t m = 0; m < m_count; ++m) z[m] = sense(state.x, sc.suite.observation(m));

      SlotDecision d;
      switch (sc.policy) {
        case Policy::kSemotaExact:
        case Policy::kSemotaGreedy: {
          ctx.slot = k;
          const auto mode = sc.policy == Policy::kSemotaExact ? SemotaMode::kExact
                                                              : SemotaMode::kGreedy;
          SemotaResult r = semota_solve(est.sigma_prior, draw, ctx, sc.stats, mode, sc.semota);
          if (k == 0) out.min_qa_first_slot = r.qa;
          d.delta = std::move(r.delta);
          d.transmitters = d.delta;
          break;
        }
        case Policy::kDpOracle: {
          ctx.slot = k;
          d.delta = dp_optimal_schedule(est.sigma_prior, draw, ctx, sc.dp, policy_rng);
          d.transmitters = d.delta;
          break;
        }
        case Policy::kAloha: {
          AlohaOutcome r = aloha_schedule(z, aloha, policy_rng);
          d.delta = std::move(r.delta);
          d.transmitters = std::move(r.transmitters);
          d.collided = r.collided;
          break;
        }
        case Policy::kTdma:
          d.delta = tdma_schedule(est.sigma_prior, tdma, m_count, policy_rng);
          d.transmitters = d.delta;
          break;
        case Policy::kOta:
          d.delta = ota_schedule(m_count);
          d.transmitters = d.delta;
          break;
        case Policy::kSilent:
          d.delta = ScheduleDecision::none(m_count);
          d.transmitters = d.delta;
          break;
      }

      const Vector y = aggregate_receive(state.x, d.delta, draw, sc.suite, rx_rng, sc.zero_noise);
      est = d.collided || !d.delta.any() ? skip_update(est) : update(est, y, d.delta, draw);

      double power = 0.0;
      for (std::size_t m = 0; m < m_count; ++m) {
        if (d.transmitters[m]) power += z[m].squaredNorm();
      }
      out.nmse.push_back(nmse(state.x, est.x_post));
      out.nmse_prior.push_back(nmse(state.x, est.x_prior));
      out.power.push_back(power);
      out.proxy_power.push_back(sc.suite.proxy_power(d.transmitters));
      out.trace_sigma.push_back(est.sigma_prior.trace());
      out.trace_sigma_post.push_back(est.sigma_post.trace());
      out.sq_error.push_back((state.x - est.x_post).squaredNorm());
      out.active.push_back(static_cast<double>(d.transmitters.active_count()));

      est = predict(est, sc.plant);
      state = plant_step(state, sc.plant, plant_rng, sc.zero_noise);
    } catch (const NumericalError& e) {
      throw NumericalError("slot " + std::to_string(k) + ": " + e.what());
    }
  }
  out.terminal_trace = est.sigma_prior.trace();
  out.total_cost = problem_cost(out.trace_sigma, out.proxy_power, sc.gamma, out.terminal_trace);
  return out;
}

}  // namespace semota

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

#include <cstdint>
#include <vector>

#include "semota/linalg.hpp"
#include "semota/rng.hpp"
#include "semota/schedule.hpp"

namespace semota {

// Linear time-invariant plant x_{k+1} = A x_k + w_k, w_k ~ N(0, W).
class PlantModel {
 public:
  // Validates that A is square, W matches it and W is symmetric positive
  // definite.
  PlantModel(Matrix a, Matrix w);

  const Matrix& a() const { return a_; }
  const Matrix& w() const { return w_; }
  Eigen::Index state_dim() const { return a_.rows(); }
  double trace_w() const { return w_.trace(); }
  // ||A||^2 (spectral norm squared), cached.
  double a_norm_sq() const { return a_norm_sq_; }
  // Lower Cholesky factor L of W (W = L L^T), used to color process noise.
  const Matrix& w_cholesky() const { return w_chol_; }

 private:
  Matrix a_;
  Matrix w_;
  Matrix w_chol_;
  double a_norm_sq_ = 0.0;
};

// Observation matrices C_m (N_t x S each) and their transmit power proxies
// Tr(C_m C_m^T).
class SensorSuite {
 public:
  SensorSuite(std::vector<Matrix> observation, Eigen::Index n_t,
              Eigen::Index state_dim);
  // Non-empty list; shape taken from the first matrix.
  explicit SensorSuite(std::vector<Matrix> observation);

  // Entries i.i.d. N(0, 1), drawn row-major sensor by sensor.
  static SensorSuite random_gaussian(std::size_t sensors, Eigen::Index n_t,
                                     Eigen::Index state_dim, RngStream& rng);

  std::size_t size() const { return observation_.size(); }
  Eigen::Index n_t() const { return n_t_; }
  Eigen::Index state_dim() const { return state_dim_; }
  const Matrix& observation(std::size_t m) const { return observation_[m]; }
  const std::vector<Matrix>& observations() const { return observation_; }
  double power_trace(std::size_t m) const { return power_trace_[m]; }
  const std::vector<double>& power_traces() const { return power_trace_; }
  // Sum of gamma-free proxy power over the active sensors of `delta`.
  double proxy_power(const ScheduleDecision& delta) const;
  double total_power_trace() const;

  // Stable hash of dimensions and matrix bit patterns (stats cache key).
  std::uint64_t fingerprint() const;

 private:
  std::vector<Matrix> observation_;
  Eigen::Index n_t_;
  Eigen::Index state_dim_;
  std::vector<double> power_trace_;
};

// One slot's fading realization: raw H_m (N_r x N_t) and effective channels
// Hbar_m = H_m C_m (N_r x S).
struct ChannelDraw {
  Eigen::Index n_r = 0;
  Eigen::Index state_dim = 0;
  std::vector<Matrix> h;
  std::vector<Matrix> hbar;

  std::size_t size() const { return h.size(); }
  // G = sum_m delta_m Hbar_m.
  Matrix aggregate(const ScheduleDecision& delta) const;
};

struct SimState {
  Vector x;
  std::uint64_t k = 0;
};

// x' = A x + w. With zero_noise the Gaussian draws are still consumed (so
// noisy and noiseless runs stay phase-aligned) but w is forced to 0.
SimState plant_step(const SimState& state, const PlantModel& model,
                    RngStream& rng, bool zero_noise = false);

// x ~ N(0, I_S) from the given stream.
Vector draw_initial_state(Eigen::Index state_dim, RngStream& rng);

// z_m = C_m x.
Vector sense(const Vector& x, const Matrix& observation);

// Every entry of every H_m i.i.d. N(0, 1).
ChannelDraw draw_channels(const SensorSuite& suite, Eigen::Index n_r,
                          RngStream& rng);

// Builds a draw from given raw fading matrices (Hbar recomputed).
ChannelDraw make_channel_draw(const SensorSuite& suite, std::vector<Matrix> h);

// y = sum_m delta_m H_m z_m + v, v ~ N(0, I_{N_r}). N_r draws are consumed
// from rng every call, also with zero_noise.
Vector aggregate_receive(const Vector& x, const ScheduleDecision& delta,
                         const ChannelDraw& draw, const SensorSuite& suite,
                         RngStream& rng, bool zero_noise = false);

}  // namespace semota

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

#include "semota/model.hpp"

#include <cstring>
#include <numeric>
#include <sstream>

#include "semota/error.hpp"

namespace semota {

PlantModel::PlantModel(Matrix a, Matrix w) : a_(std::move(a)), w_(std::move(w)) {
  require_square(a_, "plant matrix A");
  if (a_.rows() == 0) throw DimensionError("plant matrix A: state dimension must be positive");
  require_shape(w_, a_.rows(), a_.cols(), "process-noise covariance W");
  if (relative_difference(w_, w_.transpose()) > 1e-12) {
    throw PreconditionError("process-noise covariance W must be symmetric");
  }
  w_ = symmetrize(w_);
  if (!(min_eigenvalue(w_) > 0.0)) {
    throw PreconditionError("process-noise covariance W must be positive definite");
  }
  Eigen::LLT<Matrix> llt(w_);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError("process-noise covariance W: Cholesky failed");
  }
  w_chol_ = llt.matrixL();
  const double n = spectral_norm(a_);
  a_norm_sq_ = n * n;
}

SensorSuite::SensorSuite(std::vector<Matrix> observation, Eigen::Index n_t,
                         Eigen::Index state_dim)
    : observation_(std::move(observation)), n_t_(n_t), state_dim_(state_dim) {
  if (n_t_ < 1 || state_dim_ < 1) {
    throw DimensionError("sensor suite: N_t and S must be positive");
  }
  power_trace_.reserve(observation_.size());
  for (std::size_t m = 0; m < observation_.size(); ++m) {
    require_shape(observation_[m], n_t_, state_dim_,
                  "observation matrix C_" + std::to_string(m));
    power_trace_.push_back((observation_[m] * observation_[m].transpose()).trace());
  }
}

SensorSuite::SensorSuite(std::vector<Matrix> observation)
    : SensorSuite(observation,
                  observation.empty() ? 0 : observation.front().rows(),
                  observation.empty() ? 0 : observation.front().cols()) {}

SensorSuite SensorSuite::random_gaussian(std::size_t sensors, Eigen::Index n_t,
                                         Eigen::Index state_dim, RngStream& rng) {
  std::vector<Matrix> c;
  c.reserve(sensors);
  for (std::size_t m = 0; m < sensors; ++m) c.push_back(rng.normal_matrix(n_t, state_dim));
  return SensorSuite(std::move(c), n_t, state_dim);
}

double SensorSuite::proxy_power(const ScheduleDecision& delta) const {
  double total = 0.0;
  for (std::size_t m = 0; m < size(); ++m) {
    if (delta[m]) total += power_trace_[m];
  }
  return total;
}

double SensorSuite::total_power_trace() const {
  return std::accumulate(power_trace_.begin(), power_trace_.end(), 0.0);
}

std::uint64_t SensorSuite::fingerprint() const {
  std::uint64_t h = derive_seed(static_cast<std::uint64_t>(n_t_), "suite",
                                static_cast<std::uint64_t>(state_dim_));
  h = derive_seed(h, "count", observation_.size());
  for (const auto& c : observation_) {
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      for (Eigen::Index col = 0; col < c.cols(); ++col) {
        std::uint64_t bits;
        const double v = c(r, col);
        std::memcpy(&bits, &v, sizeof bits);
        h = derive_seed(h, "entry", bits);
      }
    }
  }
  return h;
}

Matrix ChannelDraw::aggregate(const ScheduleDecision& delta) const {
  if (delta.size() != hbar.size()) {
    std::ostringstream msg;
    msg << "schedule has " << delta.size() << " entries for " << hbar.size()
        << " sensors";
    throw DimensionError(msg.str());
  }
  Matrix g = Matrix::Zero(n_r, state_dim);
  for (std::size_t m = 0; m < hbar.size(); ++m) {
    if (delta[m]) g += hbar[m];
  }
  return g;
}

SimState plant_step(const SimState& state, const PlantModel& model,
                    RngStream& rng, bool zero_noise) {
  if (state.x.size() != model.state_dim()) {
    std::ostringstream msg;
    msg << "plant_step: state has length " << state.x.size()
        << " but A is " << model.state_dim() << "x" << model.state_dim();
    throw DimensionError(msg.str());
  }
  const Vector e = rng.normal_vector(model.state_dim());
  SimState next;
  next.x = model.a() * state.x;
  if (!zero_noise) next.x += model.w_cholesky() * e;
  next.k = state.k + 1;
  return next;
}

Vector draw_initial_state(Eigen::Index state_dim, RngStream& rng) {
  return rng.normal_vector(state_dim);
}

Vector sense(const Vector& x, const Matrix& observation) {
  if (observation.cols() != x.size()) {
    std::ostringstream msg;
    msg << "sense: C has " << observation.cols() << " columns but x has length "
        << x.size();
    throw DimensionError(msg.str());
  }
  return observation * x;
}

ChannelDraw make_channel_draw(const SensorSuite& suite, std::vector<Matrix> h) {
  if (h.size() != suite.size()) {
    throw DimensionError("channel draw: one fading matrix per sensor required");
  }
  ChannelDraw draw;
  draw.state_dim = suite.state_dim();
  draw.n_r = h.empty() ? 0 : h.front().rows();
  draw.hbar.reserve(h.size());
  for (std::size_t m = 0; m < h.size(); ++m) {
    require_shape(h[m], draw.n_r, suite.n_t(), "fading matrix H_" + std::to_string(m));
    draw.hbar.push_back(h[m] * suite.observation(m));
  }
  draw.h = std::move(h);
  return draw;
}

ChannelDraw draw_channels(const SensorSuite& suite, Eigen::Index n_r,
                          RngStream& rng) {
  if (n_r < 1) throw DimensionError("draw_channels: N_r must be at least 1");
  std::vector<Matrix> h;
  h.reserve(suite.size());
  for (std::size_t m = 0; m < suite.size(); ++m) h.push_back(rng.normal_matrix(n_r, suite.n_t()));
  ChannelDraw draw = make_channel_draw(suite, std::move(h));
  draw.n_r = n_r;
  return draw;
}

Vector aggregate_receive(const Vector& x, const ScheduleDecision& delta,
                         const ChannelDraw& draw, const SensorSuite& suite,
                         RngStream& rng, bool zero_noise) {
  if (delta.size() != suite.size() || draw.size() != suite.size()) {
    throw DimensionError("aggregate_receive: schedule, draw and suite disagree on M");
  }
  Vector y = Vector::Zero(draw.n_r);
  for (std::size_t m = 0; m < suite.size(); ++m) {
    if (delta[m]) y += draw.h[m] * sense(x, suite.observation(m));
  }
  const Vector v = rng.normal_vector(draw.n_r);
  if (!zero_noise) y += v;
  return y;
}

}  // namespace semota

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

#include "semota/linalg.hpp"
#include "semota/model.hpp"
#include "semota/schedule.hpp"

namespace semota {

// Kalman recursion state. The prior pair (x_prior, sigma_prior) is
// conditioned on y_0..y_{k-1}; the posterior pair on y_0..y_k.
struct EstimatorState {
  Vector x_prior;
  Matrix sigma_prior;
  Vector x_post;
  Matrix sigma_post;

  // Slot-0 state: prior set to (xhat0, sigma0), posterior equal to the prior
  // until the first update.
  static EstimatorState initial(Vector xhat0, Matrix sigma0);
};

// x_prior = A x_post, sigma_prior = A sigma_post A^T + W.
EstimatorState predict(const EstimatorState& est, const PlantModel& model);

// K = Sigma G^T (G Sigma G^T + I)^{-1} with G the aggregated effective
// channel. Solved through the Cholesky factor of the innovation covariance.
Matrix kalman_gain(const Matrix& sigma, const Matrix& g);
Matrix kalman_gain(const Matrix& sigma, const ScheduleDecision& delta,
                   const ChannelDraw& draw);

// Measurement update in Joseph form,
//   sigma_post = (I - K G) Sigma (I - K G)^T + K K^T.
EstimatorState update(const EstimatorState& est, const Vector& y,
                      const ScheduleDecision& delta, const ChannelDraw& draw);

// Prediction-only slot: posterior equals prior.
EstimatorState skip_update(const EstimatorState& est);

// (Sigma^{-1} + G^T G)^{-1}. Requires Sigma positive definite.
Matrix information_update(const Matrix& sigma, const Matrix& g);
Matrix information_update(const Matrix& sigma, const ScheduleDecision& delta,
                          const ChannelDraw& draw);

// The one-step Riccati map f = A (Sigma^{-1} + G^T G)^{-1} A^T.
Matrix riccati_map(const Matrix& sigma, const Matrix& g, const Matrix& a);
Matrix riccati_map(const Matrix& sigma, const ScheduleDecision& delta,
                   const ChannelDraw& draw, const PlantModel& model);

// Reuses one inversion of Sigma across many candidate aggregated channels,
// which is what schedule enumeration needs.
class InformationForm {
 public:
  explicit InformationForm(const Matrix& sigma);

  const Matrix& sigma() const { return sigma_; }
  const Matrix& sigma_inverse() const { return sigma_inv_; }

  // (Sigma^{-1} + G^T G)^{-1}
  Matrix posterior(const Matrix& g) const;
  // A (Sigma^{-1} + G^T G)^{-1} A^T
  Matrix riccati(const Matrix& g, const Matrix& a) const;

 private:
  Matrix sigma_;
  Matrix sigma_inv_;
};

}  // namespace semota

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

#include "semota/estimator.hpp"

#include <sstream>

#include "semota/error.hpp"

namespace semota {

EstimatorState EstimatorState::initial(Vector xhat0, Matrix sigma0) {
  require_square(sigma0, "initial covariance");
  if (sigma0.rows() != xhat0.size()) {
    throw DimensionError("initial estimate and covariance disagree on S");
  }
  EstimatorState est;
  est.x_prior = std::move(xhat0);
  est.sigma_prior = project_psd(sigma0, "initial covariance");
  est.x_post = est.x_prior;
  est.sigma_post = est.sigma_prior;
  return est;
}

EstimatorState predict(const EstimatorState& est, const PlantModel& model) {
  if (est.x_post.size() != model.state_dim()) {
    throw DimensionError("predict: estimate length does not match A");
  }
  EstimatorState next = est;
  next.x_prior = model.a() * est.x_post;
  next.sigma_prior = project_psd(
      model.a() * est.sigma_post * model.a().transpose() + model.w(),
      "prior covariance");
  return next;
}

Matrix kalman_gain(const Matrix& sigma, const Matrix& g) {
  require_square(sigma, "kalman_gain: covariance");
  if (g.cols() != sigma.rows()) throw DimensionError("kalman_gain: G and Sigma disagree on S");
  const Matrix g_sigma = g * sigma;
  const Matrix innovation =
      symmetrize(g_sigma * g.transpose()) + Matrix::Identity(g.rows(), g.rows());
  Eigen::LLT<Matrix> llt(innovation);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("kalman_gain: innovation covariance factorization failed");
  }
  // K^T = S^{-1} G Sigma since S and Sigma are symmetric.
  const Matrix gain_t = llt.solve(g_sigma);
  const double residual = (innovation * gain_t - g_sigma).norm();
  if (!(residual <= 1e-6 * std::max(1.0, g_sigma.norm()))) {
    std::ostringstream msg;
    msg << "kalman_gain: solve residual " << residual << " exceeds tolerance";
    throw NumericalError(msg.str());
  }
  return gain_t.transpose();
}

Matrix kalman_gain(const Matrix& sigma, const ScheduleDecision& delta,
                   const ChannelDraw& draw) {
  return kalman_gain(sigma, draw.aggregate(delta));
}

EstimatorState update(const EstimatorState& est, const Vector& y,
                      const ScheduleDecision& delta, const ChannelDraw& draw) {
  const Matrix g = draw.aggregate(delta);
  if (y.size() != g.rows()) throw DimensionError("update: y length does not match N_r");
  const Matrix gain = kalman_gain(est.sigma_prior, g);
  const Eigen::Index s = est.sigma_prior.rows();
  const Matrix i_kg = Matrix::Identity(s, s) - gain * g;

  EstimatorState next = est;
  next.x_post = est.x_prior + gain * (y - g * est.x_prior);
  next.sigma_post = project_psd(
      i_kg * est.sigma_prior * i_kg.transpose() + gain * gain.transpose(),
      "posterior covariance");
  return next;
}

EstimatorState skip_update(const EstimatorState& est) {
  EstimatorState next = est;
  next.x_post = est.x_prior;
  next.sigma_post = est.sigma_prior;
  return next;
}

InformationForm::InformationForm(const Matrix& sigma)
    : sigma_(symmetrize(sigma)), sigma_inv_(spd_inverse(sigma, "information form: Sigma")) {}

Matrix InformationForm::posterior(const Matrix& g) const {
  if (g.cols() != sigma_.rows()) throw DimensionError("information form: G and Sigma disagree on S");
  const Matrix info = sigma_inv_ + g.transpose() * g;
  Eigen::LLT<Matrix> llt(info);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("information form: factorization failed");
  }
  return symmetrize(llt.solve(Matrix::Identity(info.rows(), info.cols())));
}

Matrix InformationForm::riccati(const Matrix& g, const Matrix& a) const {
  return symmetrize(a * posterior(g) * a.transpose());
}

Matrix information_update(const Matrix& sigma, const Matrix& g) {
  return InformationForm(sigma).posterior(g);
}

Matrix information_update(const Matrix& sigma, const ScheduleDecision& delta,
                          const ChannelDraw& draw) {
  return information_update(sigma, draw.aggregate(delta));
}

Matrix riccati_map(const Matrix& sigma, const Matrix& g, const Matrix& a) {
  return InformationForm(sigma).riccati(g, a);
}

Matrix riccati_map(const Matrix& sigma, const ScheduleDecision& delta,
                   const ChannelDraw& draw, const PlantModel& model) {
  return riccati_map(sigma, draw.aggregate(delta), model.a());
}

}  // namespace semota

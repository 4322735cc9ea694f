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

inline constexpr double kDefaultRankTol = 1e-9;
// Rank threshold used when the Gram matrix is identically zero.
inline constexpr double kRankAbsoluteFloor = 1e-12;

// PSD cone decomposition of the aggregated-channel Gram matrix,
//   G^T G = U^T diag(psi) U,
// with psi sorted nonincreasing, `rank` the number of eigenvalues above the
// rank threshold, and projector Pi = diag(1 x rank, 0 x (S - rank)).
struct GramDecomposition {
  Matrix u;
  Vector psi;
  Eigen::Index rank = 0;

  Eigen::Index dim() const { return psi.size(); }
  Matrix projector() const;
  // U^T diag(psi) U
  Matrix reconstruct() const;
};

GramDecomposition gram_decompose(const Matrix& g, double rank_tol = kDefaultRankTol);
GramDecomposition gram_decompose(const ScheduleDecision& delta,
                                 const ChannelDraw& draw,
                                 double rank_tol = kDefaultRankTol);

// alpha = ||M M^T|| with M = A U^T (I - Pi) U: how much of the plant's
// growth acts on directions the aggregated channel does not observe.
double alpha_of(const GramDecomposition& decomp, const Matrix& a);

// beta = ||A||^2 * sum_{i < rank} 1 / psi_i, and 0 when rank is 0.
double beta_of(const GramDecomposition& decomp, double a_norm_sq);
double beta_of(const GramDecomposition& decomp, const Matrix& a);

}  // namespace semota

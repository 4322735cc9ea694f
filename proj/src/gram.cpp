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

#include "semota/gram.hpp"

#include <algorithm>

#include "semota/error.hpp"

namespace semota {

Matrix GramDecomposition::projector() const {
  Matrix pi = Matrix::Zero(dim(), dim());
  for (Eigen::Index i = 0; i < rank; ++i) pi(i, i) = 1.0;
  return pi;
}

Matrix GramDecomposition::reconstruct() const {
  return u.transpose() * psi.asDiagonal() * u;
}

GramDecomposition gram_decompose(const Matrix& g, double rank_tol) {
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) {
    throw PreconditionError("gram_decompose: rank_tol must lie in (0, 1)");
  }
  const Eigen::Index s = g.cols();
  const Matrix gram = symmetrize(g.transpose() * g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.info() != Eigen::Success) {
    throw NumericalError("gram_decompose: eigensolver did not converge");
  }

  // Eigen returns ascending order; reverse to descending and transpose the
  // eigenvector matrix so that rows of U are eigenvectors.
  GramDecomposition d;
  d.psi.resize(s);
  d.u.resize(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    const Eigen::Index src = s - 1 - i;
    d.psi(i) = std::max(es.eigenvalues()(src), 0.0);
    d.u.row(i) = es.eigenvectors().col(src).transpose();
  }

  const double top = s > 0 ? d.psi(0) : 0.0;
  const double threshold = top > 0.0 ? rank_tol * top : kRankAbsoluteFloor;
  d.rank = 0;
  while (d.rank < s && d.psi(d.rank) > threshold) ++d.rank;
  return d;
}

GramDecomposition gram_decompose(const ScheduleDecision& delta,
                                 const ChannelDraw& draw, double rank_tol) {
  return gram_decompose(draw.aggregate(delta), rank_tol);
}

double alpha_of(const GramDecomposition& decomp, const Matrix& a) {
  const Eigen::Index s = decomp.dim();
  if (decomp.rank == s) return 0.0;
  const Matrix unobserved =
      decomp.u.transpose() * (Matrix::Identity(s, s) - decomp.projector()) * decomp.u;
  const Matrix m = a * unobserved;
  return std::max(max_eigenvalue(symmetrize(m * m.transpose())), 0.0);
}

double beta_of(const GramDecomposition& decomp, double a_norm_sq) {
  double inverse_sum = 0.0;
  for (Eigen::Index i = 0; i < decomp.rank; ++i) inverse_sum += 1.0 / decomp.psi(i);
  return a_norm_sq * inverse_sum;
}

double beta_of(const GramDecomposition& decomp, const Matrix& a) {
  const double n = spectral_norm(a);
  return beta_of(decomp, n * n);
}

}  // namespace semota

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

#include "semota/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "semota/error.hpp"

namespace semota {

Matrix symmetrize(const Matrix& x) { return 0.5 * (x + x.transpose()); }

double spectral_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

double min_eigenvalue(const Matrix& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(sym.rows() - 1);
}

double relative_difference(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

Matrix project_psd(const Matrix& x, std::string_view what) {
  Matrix s = symmetrize(x);
  if (s.size() == 0) return s;
  if (!s.allFinite()) {
    throw NumericalError(std::string(what) + ": non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + ": eigensolver did not converge");
  }
  const double lo = es.eigenvalues()(0);
  if (lo >= 0.0) return s;
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  if (lo <= -kPsdFloorTolerance * scale) {
    std::ostringstream msg;
    msg << what << ": not positive semidefinite (min eigenvalue " << lo
        << ", norm " << scale << ")";
    throw NumericalError(msg.str());
  }
  const Vector clamped = es.eigenvalues().cwiseMax(0.0);
  return symmetrize(es.eigenvectors() * clamped.asDiagonal() *
                    es.eigenvectors().transpose());
}

void require_square(const Matrix& x, std::string_view what) {
  if (x.rows() != x.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << x.rows() << "x"
        << x.cols();
    throw DimensionError(msg.str());
  }
}

void require_shape(const Matrix& x, Eigen::Index rows, Eigen::Index cols,
                   std::string_view what) {
  if (x.rows() != rows || x.cols() != cols) {
    std::ostringstream msg;
    msg << what << ": expected " << rows << "x" << cols << ", got " << x.rows()
        << "x" << x.cols();
    throw DimensionError(msg.str());
  }
}

Matrix spd_inverse(const Matrix& x, std::string_view what) {
  require_square(x, what);
  const Matrix s = symmetrize(x);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(es.eigenvalues()(0) > 1e-12 * hi)) {
    std::ostringstream msg;
    msg << what << ": matrix is not positive definite (min eigenvalue "
        << es.eigenvalues()(0) << ")";
    throw PreconditionError(msg.str());
  }
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError(std::string(what) + ": Cholesky factorization failed");
  }
  return symmetrize(llt.solve(Matrix::Identity(s.rows(), s.cols())));
}

}  // namespace semota

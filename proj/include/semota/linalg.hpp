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

#include <string_view>

#include <Eigen/Dense>

namespace semota {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// (X + X^T) / 2
Matrix symmetrize(const Matrix& x);

// Largest singular value.
double spectral_norm(const Matrix& x);

// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& sym);

// Largest eigenvalue of a symmetric matrix.
double max_eigenvalue(const Matrix& sym);

// Frobenius-norm relative difference ||a - b|| / max(||b||, 1e-300).
double relative_difference(const Matrix& a, const Matrix& b);

// Relative roundoff band used by the eigenvalue floor.
inline constexpr double kPsdFloorTolerance = 1e-10;

// Symmetrizes and applies the eigenvalue floor: eigenvalues in
// (-1e-10 * ||X||, 0) are clamped to zero, anything more negative raises
// NumericalError naming `what`.
Matrix project_psd(const Matrix& x, std::string_view what);

void require_square(const Matrix& x, std::string_view what);
void require_shape(const Matrix& x, Eigen::Index rows, Eigen::Index cols,
                   std::string_view what);

// Inverse of a symmetric positive definite matrix through its Cholesky
// factor. Raises PreconditionError when the smallest eigenvalue is not above
// 1e-12 * ||X|| (singular for the purposes of the information form).
Matrix spd_inverse(const Matrix& x, std::string_view what);

}  // namespace semota

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

#include "semota/appendix.hpp"

#include "semota/error.hpp"

namespace semota {

AppendixSplit appendix_split(const Matrix& sigma, const GramDecomposition& decomp) {
  require_square(sigma, "appendix_split: Sigma");
  const Eigen::Index s = sigma.rows();
  if (decomp.dim() != s) throw DimensionError("appendix_split: decomposition and Sigma disagree on S");
  const Eigen::Index r = decomp.rank;

  AppendixSplit out;
  out.coupling = Matrix::Zero(r, s - r);
  if (r == 0) {
    out.sigma_o = Matrix::Zero(s, s);
    out.sigma_u = sigma;
    return out;
  }

  const Matrix rotated = symmetrize(decomp.u * sigma * decomp.u.transpose());
  const Matrix lead = rotated.topLeftCorner(r, r);
  Eigen::LLT<Matrix> llt(lead);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError("appendix_split: leading block of rotated Sigma is singular");
  }
  out.coupling = llt.solve(rotated.topRightCorner(r, s - r));

  Matrix block(s, s);
  block.topLeftCorner(r, r) = lead;
  block.topRightCorner(r, s - r) = lead * out.coupling;
  block.bottomLeftCorner(s - r, r) = out.coupling.transpose() * lead;
  block.bottomRightCorner(s - r, s - r) = out.coupling.transpose() * lead * out.coupling;

  out.sigma_o = symmetrize(decomp.u.transpose() * block * decomp.u);
  out.sigma_u = symmetrize(sigma - out.sigma_o);
  return out;
}

}  // namespace semota

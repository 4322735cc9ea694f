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

#include "semota/gram.hpp"
#include "semota/linalg.hpp"

namespace semota {

// Split of a prior covariance against the all-active Gram decomposition
// G^T G = U^T diag(psi) U of rank r. With R = U Sigma U^T partitioned at r,
//
//   L       = R11^{-1} R12                         (r x (S-r) coupling)
//   Sigma_o = U^T [ R11        R11 L      ] U      (the observable part)
//                 [ L^T R11    L^T R11 L  ]
//   Sigma_u = Sigma - Sigma_o                       (rotated: diag(0, Schur complement))
//
// so that diag(psi) * (U Sigma_u U^T) = 0.
struct AppendixSplit {
  Matrix sigma_o;
  Matrix sigma_u;
  Matrix coupling;
};

AppendixSplit appendix_split(const Matrix& sigma, const GramDecomposition& decomp);

}  // namespace semota

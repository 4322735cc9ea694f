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

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace semota {

// Mixes a seed with a label and an index into a new 64-bit seed. Used to
// derive independent, reproducible streams (per noise source, per episode,
// per sensor count) from one master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index = 0);

// A named pseudo-random stream.
//
// The engine is std::mt19937_64 (its output sequence is fixed by the C++
// standard) and Gaussian variates come from a hand-written Box-Muller
// transform, so a (seed, label) pair yields the same draws on every build of
// a given release. std::normal_distribution is not used because its
// algorithm is implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in [0, n). Unbiased (rejection sampling). n > 0.
  std::size_t uniform_index(std::size_t n);

  // Standard normal.
  double normal();

  Eigen::VectorXd normal_vector(Eigen::Index n);
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace semota

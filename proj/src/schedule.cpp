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

#include "semota/schedule.hpp"

#include <algorithm>

#include "semota/error.hpp"

namespace semota {

ScheduleDecision::ScheduleDecision(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw PreconditionError("schedule entries must be 0 or 1");
  }
}

ScheduleDecision ScheduleDecision::from_mask(std::uint64_t mask,
                                             std::size_t sensors) {
  if (sensors > 63) throw SizeError("schedule mask supports at most 63 sensors");
  ScheduleDecision d(sensors);
  for (std::size_t m = 0; m < sensors; ++m) d.bits_[m] = (mask >> m) & 1U;
  return d;
}

std::size_t ScheduleDecision::active_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string ScheduleDecision::str() const {
  std::string out;
  for (std::size_t m = 0; m < bits_.size(); ++m) {
    if (m) out += ',';
    out += bits_[m] ? '1' : '0';
  }
  return out;
}

}  // namespace semota

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
#include <string>
#include <vector>

namespace semota {

// Binary activation vector delta_k: entry m is 1 when sensor m transmits in
// the current slot.
class ScheduleDecision {
 public:
  ScheduleDecision() = default;
  explicit ScheduleDecision(std::size_t sensors, bool active = false)
      : bits_(sensors, active ? 1 : 0) {}
  explicit ScheduleDecision(std::vector<std::uint8_t> bits);

  static ScheduleDecision all_active(std::size_t sensors) {
    return ScheduleDecision(sensors, true);
  }
  static ScheduleDecision none(std::size_t sensors) {
    return ScheduleDecision(sensors, false);
  }
  // Bit m of `mask` gives delta_m. sensors <= 63.
  static ScheduleDecision from_mask(std::uint64_t mask, std::size_t sensors);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t m) const { return bits_[m] != 0; }
  void set(std::size_t m, bool active) { bits_[m] = active ? 1 : 0; }
  std::size_t active_count() const;
  bool any() const { return active_count() > 0; }

  // "1,0,1" style.
  std::string str() const;

  friend bool operator==(const ScheduleDecision&, const ScheduleDecision&) = default;

  // Lexicographic order on (delta_1, ..., delta_M) with 0 < 1.
  friend bool lexicographically_less(const ScheduleDecision& a,
                                     const ScheduleDecision& b) {
    return a.bits_ < b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace semota

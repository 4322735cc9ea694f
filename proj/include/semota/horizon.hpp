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

#include "semota/model.hpp"

namespace semota {

// Everything the schedulers need besides the current covariance and channel:
// plant, sensors, receive antennas, horizon K, current slot k and the
// accuracy/power trade-off weight gamma.
struct HorizonContext {
  HorizonContext(PlantModel plant, SensorSuite suite, Eigen::Index n_r,
                 int horizon, int slot, double gamma);

  PlantModel plant;
  SensorSuite suite;
  Eigen::Index n_r;
  int horizon;
  int slot;
  double gamma;

  // K - k
  int remaining() const { return horizon - slot; }
  bool terminal() const { return slot == horizon - 1; }
  double trace_w() const { return plant.trace_w(); }

  HorizonContext at_slot(int k) const;
};

}  // namespace semota

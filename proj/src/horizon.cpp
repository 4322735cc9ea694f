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

#include "semota/horizon.hpp"

#include <sstream>

#include "semota/error.hpp"

namespace semota {

HorizonContext::HorizonContext(PlantModel plant_, SensorSuite suite_, Eigen::Index n_r_,
                               int horizon_, int slot_, double gamma_)
    : plant(std::move(plant_)),
      suite(std::move(suite_)),
      n_r(n_r_),
      horizon(horizon_),
      slot(slot_),
      gamma(gamma_) {
  if (horizon < 1) throw PreconditionError("horizon K must be >= 1");
  if (slot < 0 || slot > horizon - 1) {
    std::ostringstream msg;
    msg << "slot " << slot << " outside [0, " << horizon - 1 << "]";
    throw PreconditionError(msg.str());
  }
  if (!(gamma >= 0.0)) throw PreconditionError("trade-off weight gamma must be >= 0");
  if (n_r < 1) throw PreconditionError("N_r must be >= 1");
  if (suite.state_dim() != plant.state_dim()) {
    throw DimensionError("sensor suite and plant disagree on S");
  }
}

HorizonContext HorizonContext::at_slot(int k) const {
  HorizonContext next = *this;
  if (k < 0 || k > horizon - 1) throw PreconditionError("slot outside horizon");
  next.slot = k;
  return next;
}

}  // namespace semota

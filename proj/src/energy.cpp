// Copyright 2026 The hetfor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetfor/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetfor {

void PowerModel::validate() const {
  const double values[] = {p_cc_active, p_cc_idle, p_fc_active, p_fc_idle,
                           p_static};
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("PowerModel: powers must be finite and >= 0");
    }
  }
  if (p_cc_active < p_cc_idle || p_fc_active < p_fc_idle) {
    throw std::invalid_argument("PowerModel: active power must be >= idle");
  }
}

double compute_energy(const RunReport& report, const PowerModel& pm) {
  pm.validate();
  const double wall = report.wall_time;
  double energy = wall * pm.p_static;
  for (const TokenSummary& token : report.per_resource_busy) {
    // Wall-clock timing jitter can nudge a token's summed busy time past the
    // wall time; idle time never goes negative.
    const double busy = std::min(token.busy_seconds, wall);
    const double idle = wall - busy;
    if (token.kind == ResourceKind::CC) {
      energy += busy * pm.p_cc_active + idle * pm.p_cc_idle;
    } else {
      energy += busy * pm.p_fc_active + idle * pm.p_fc_idle;
    }
  }
  return energy;
}

}  // namespace hetfor

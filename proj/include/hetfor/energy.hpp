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

#pragma once

#include "hetfor/engine.hpp"

namespace hetfor {

/// Parametric power model. All values are modeled calibration knobs for
/// energy-shape experiments, not hardware measurements.
struct PowerModel {
  double p_cc_active = 0.0;  // watts per CPU core while executing a chunk
  double p_cc_idle = 0.0;    // watts per CPU core otherwise
  double p_fc_active = 0.0;  // watts per accelerator unit while executing
  double p_fc_idle = 0.0;    // watts per accelerator unit otherwise
  double p_static = 0.0;     // watts baseline for the whole device

  /// Throws std::invalid_argument unless all values are >= 0 and each
  /// active power is >= its idle power.
  void validate() const;
};

/// Modeled energy of one run, in joules:
///   sum over tokens of busy * p_active + (wall - busy) * p_idle,
///   plus wall * p_static.
/// Busy time is the sum of the token's chunk durations from the report; an
/// accelerator token's busy time is its modeled offload time (the service
/// worker's host-CPU time stands in for fabric work and is not billed as a
/// CPU core).
double compute_energy(const RunReport& report, const PowerModel& pm);

}  // namespace hetfor

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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetfor/accel.hpp"
#include "hetfor/clock.hpp"
#include "hetfor/energy.hpp"
#include "hetfor/engine.hpp"

namespace hetfor {

/// Invalid command line or invalid parameter combination; the CLI maps this
/// to exit status 2 and prints usage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full configuration of one benchmark run. Defaults match the "zynq"
/// preset (modeled single-accelerator device).
struct RunParams {
  // Positional (required): resource counts and the accelerator chunk size.
  int num_cpu_t = 0;
  int num_fpga_t = 0;
  std::int64_t fpga_chunksize = 0;

  // Problem shape.
  std::int64_t matrix_size = 1024;  // square GEMM: n = rows of C
  std::int64_t tile_cols = 32;      // accelerator B-column buffer width

  // Execution mode.
  ClockMode clock_mode = ClockMode::WallClock;
  WaitDiscipline wait_discipline = WaitDiscipline::Interrupt;

  // Modeled device parameters.
  int fc_units = 1;
  double fc_throughput = 4.0e5;  // iterations (C rows) per second per unit
  double fc_overhead = 1.0e-3;   // seconds per offload
  bool enable_irq = true;
  double cc_throughput = 1.0e5;  // virtual-time CPU iterations per second

  // Partitioner knobs.
  double f_init = 1.0;
  double f_alpha = 0.5;

  // Reproducibility and output.
  std::uint32_t seed = 1;
  std::string trace_path;  // empty: no trace file

  // Modeled power (labeled modeled, not measured).
  PowerModel power{0.22, 0.02, 0.25, 0.02, 0.20};

  std::string preset;  // "", "zynq", or "zynq-ultrascale" (for reporting)

  /// Throws UsageError on violated invariants.
  void validate() const;

  /// The EngineConfig this run corresponds to.
  EngineConfig engine_config() const;
};

/// Named modeled-device presets. Throws UsageError for unknown names.
///   zynq            — 1 FC unit, tile_cols 32, ~0.8 W scale power model
///   zynq-ultrascale — 4 FC units, tile_cols 128, ~4.2 W scale power model
void apply_preset(RunParams& params, const std::string& name);

/// Parses `<num_cpu_t> <num_fpga_t> <fpga_chunksize>` plus --key=value
/// flags (see usage_text). argv excludes the program name. --preset is
/// applied first so explicit flags always override preset values.
/// Throws UsageError on any problem, naming the violated constraint.
RunParams parse_params(const std::vector<std::string>& argv);

/// Human-readable CLI reference.
std::string usage_text();

}  // namespace hetfor

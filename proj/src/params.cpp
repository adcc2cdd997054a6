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

#include "hetfor/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hetfor {
namespace {

long long parse_ll(const std::string& value, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": expected an integer, got '" + value + "'");
  }
}

int parse_int(const std::string& value, const std::string& what) {
  const long long v = parse_ll(value, what);
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw UsageError(what + ": value out of range: '" + value + "'");
  }
  return static_cast<int>(v);
}

double parse_num(const std::string& value, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": expected a number, got '" + value + "'");
  }
}

bool parse_bool01(const std::string& value, const std::string& what) {
  if (value == "0") return false;
  if (value == "1") return true;
  throw UsageError(what + ": expected 0 or 1, got '" + value + "'");
}

struct Flag {
  std::string key;
  std::string value;
};

void apply_flag(RunParams& p, const Flag& f) {
  const std::string what = "--" + f.key;
  if (f.key == "matrix") {
    p.matrix_size = parse_ll(f.value, what);
  } else if (f.key == "tile-cols") {
    p.tile_cols = parse_ll(f.value, what);
  } else if (f.key == "clock") {
    if (f.value == "wall") {
      p.clock_mode = ClockMode::WallClock;
    } else if (f.value == "virtual") {
      p.clock_mode = ClockMode::VirtualTime;
    } else {
      throw UsageError("--clock: expected wall or virtual, got '" + f.value +
                       "'");
    }
  } else if (f.key == "wait") {
    if (f.value == "spin") {
      p.wait_discipline = WaitDiscipline::Spin;
    } else if (f.value == "interrupt") {
      p.wait_discipline = WaitDiscipline::Interrupt;
    } else {
      throw UsageError("--wait: expected spin or interrupt, got '" + f.value +
                       "'");
    }
  } else if (f.key == "fc-throughput") {
    p.fc_throughput = parse_num(f.value, what);
  } else if (f.key == "fc-overhead") {
    p.fc_overhead = parse_num(f.value, what);
  } else if (f.key == "fc-units") {
    p.fc_units = parse_int(f.value, what);
  } else if (f.key == "enable-irq") {
    p.enable_irq = parse_bool01(f.value, what);
  } else if (f.key == "cc-throughput") {
    p.cc_throughput = parse_num(f.value, what);
  } else if (f.key == "f-init") {
    p.f_init = parse_num(f.value, what);
  } else if (f.key == "f-alpha") {
    p.f_alpha = parse_num(f.value, what);
  } else if (f.key == "seed") {
    const long long v = parse_ll(f.value, what);
    if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
      throw UsageError("--seed: value out of range: '" + f.value + "'");
    }
    p.seed = static_cast<std::uint32_t>(v);
  } else if (f.key == "trace") {
    p.trace_path = f.value;
  } else {
    throw UsageError("unknown flag --" + f.key);
  }
}

}  // namespace

void apply_preset(RunParams& p, const std::string& name) {
  if (name == "zynq") {
    p.fc_units = 1;
    p.fc_throughput = 4.0e5;
    p.fc_overhead = 1.0e-3;
    p.cc_throughput = 1.0e5;
    p.tile_cols = 32;
    p.power = PowerModel{0.22, 0.02, 0.25, 0.02, 0.20};
  } else if (name == "zynq-ultrascale") {
    p.fc_units = 4;
    p.fc_throughput = 1.2e6;
    p.fc_overhead = 5.0e-4;
    p.cc_throughput = 3.0e5;
    p.tile_cols = 128;
    p.power = PowerModel{0.50, 0.05, 0.35, 0.03, 0.80};
  } else {
    throw UsageError("--preset: unknown preset '" + name +
                     "' (expected zynq or zynq-ultrascale)");
  }
  p.preset = name;
}

void RunParams::validate() const {
  if (num_cpu_t < 0) throw UsageError("num_cpu_t must be >= 0");
  if (num_fpga_t < 0) throw UsageError("num_fpga_t must be >= 0");
  if (num_cpu_t + num_fpga_t < 1) {
    throw UsageError(
        "at least one resource is required (num_cpu_t + num_fpga_t >= 1)");
  }
  if (fc_units < 1) throw UsageError("--fc-units must be >= 1");
  if (num_fpga_t > fc_units) {
    throw UsageError("num_fpga_t must be in {0.." + std::to_string(fc_units) +
                     "} (see --fc-units)");
  }
  if (num_fpga_t > 0 && fpga_chunksize < 1) {
    throw UsageError("fpga_chunksize must be >= 1 when num_fpga_t > 0");
  }
  if (matrix_size < 1) throw UsageError("--matrix must be >= 1");
  if (tile_cols < 1) throw UsageError("--tile-cols must be >= 1");
  if (!std::isfinite(fc_throughput) || fc_throughput <= 0.0) {
    throw UsageError("--fc-throughput must be > 0");
  }
  if (!std::isfinite(fc_overhead) || fc_overhead < 0.0) {
    throw UsageError("--fc-overhead must be >= 0");
  }
  if (!std::isfinite(cc_throughput) || cc_throughput <= 0.0) {
    throw UsageError("--cc-throughput must be > 0");
  }
  if (!std::isfinite(f_init) || f_init <= 0.0) {
    throw UsageError("--f-init must be > 0");
  }
  if (!std::isfinite(f_alpha) || f_alpha < 0.0 || f_alpha > 1.0) {
    throw UsageError("--f-alpha must be in [0, 1]");
  }
  if (num_fpga_t > 0 && wait_discipline == WaitDiscipline::Interrupt &&
      !enable_irq) {
    throw UsageError(
        "interrupt waits require --enable-irq=1 (or use --wait=spin)");
  }
  try {
    power.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

EngineConfig RunParams::engine_config() const {
  EngineConfig cfg;
  cfg.sched.num_cpu_workers = num_cpu_t;
  cfg.sched.num_accel_workers = num_fpga_t;
  // The chunk size is meaningless with the accelerator disabled; normalize
  // it so the scheduler's unconditional >= 1 invariant holds.
  cfg.sched.accel_chunk_size = std::max<std::int64_t>(fpga_chunksize, 1);
  cfg.sched.speed_factor_init = f_init;
  cfg.sched.smoothing_alpha = f_alpha;
  cfg.sched.min_cpu_chunk = 1;
  cfg.accel.units = fc_units;
  cfg.accel.throughput = fc_throughput;
  cfg.accel.overhead = fc_overhead;
  cfg.accel.completion_irq_enabled = enable_irq;
  cfg.wait_discipline = wait_discipline;
  cfg.clock_mode = clock_mode;
  cfg.cpu_seconds_per_iter = 1.0 / cc_throughput;
  return cfg;
}

RunParams parse_params(const std::vector<std::string>& argv) {
  std::vector<std::string> positionals;
  std::vector<Flag> flags;
  std::string preset_name;

  for (const std::string& arg : argv) {
    if (arg.rfind("--", 0) == 0) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos || eq == 2) {
        throw UsageError("flags take the form --key=value: '" + arg + "'");
      }
      Flag f{arg.substr(2, eq - 2), arg.substr(eq + 1)};
      if (f.key == "preset") {
        preset_name = f.value;  // applied before other flags
      } else {
        flags.push_back(std::move(f));
      }
    } else {
      positionals.push_back(arg);
    }
  }

  if (positionals.size() != 3) {
    throw UsageError(
        "expected exactly 3 positional arguments: <num_cpu_t> <num_fpga_t> "
        "<fpga_chunksize>");
  }

  RunParams params;
  if (!preset_name.empty()) apply_preset(params, preset_name);

  params.num_cpu_t = parse_int(positionals[0], "num_cpu_t");
  params.num_fpga_t = parse_int(positionals[1], "num_fpga_t");
  params.fpga_chunksize = parse_ll(positionals[2], "fpga_chunksize");

  for (const Flag& f : flags) apply_flag(params, f);

  params.validate();
  return params;
}

std::string usage_text() {
  return
      "usage: hetfor <num_cpu_t> <num_fpga_t> <fpga_chunksize> [flags]\n"
      "       hetfor sweep [flags]\n"
      "\n"
      "positional arguments\n"
      "  num_cpu_t        CPU worker tokens (>= 0)\n"
      "  num_fpga_t       accelerator compute-unit tokens (0 disables, up to\n"
      "                   --fc-units)\n"
      "  fpga_chunksize   iterations per accelerator chunk (>= 1 when\n"
      "                   num_fpga_t > 0)\n"
      "\n"
      "flags (--key=value)\n"
      "  --matrix=N           square matrix size, default 1024\n"
      "  --tile-cols=K        accelerator B-column buffer width, default 32\n"
      "  --clock=wall|virtual wall: real time; virtual: deterministic\n"
      "                       discrete-event time (default wall)\n"
      "  --wait=spin|interrupt offload wait discipline (default interrupt)\n"
      "  --fc-throughput=R    modeled accelerator iterations/s per unit\n"
      "                       (default 4e5)\n"
      "  --fc-overhead=S      modeled per-offload overhead seconds\n"
      "                       (default 1e-3)\n"
      "  --fc-units=U         modeled accelerator unit count (default 1)\n"
      "  --enable-irq=0|1     completion notifications on/off (default 1;\n"
      "                       interrupt waits require 1)\n"
      "  --cc-throughput=R    virtual-time CPU iterations/s (default 1e5)\n"
      "  --f-init=F           initial speed factor (default 1.0)\n"
      "  --f-alpha=A          timing EWMA weight in [0,1] (default 0.5)\n"
      "  --seed=S             matrix RNG seed (default 1)\n"
      "  --trace=PATH         write the per-chunk trace CSV here\n"
      "  --preset=NAME        modeled device preset: zynq (1 unit) or\n"
      "                       zynq-ultrascale (4 units); explicit flags\n"
      "                       override preset values\n"
      "\n"
      "sweep-only flags\n"
      "  --chunks=A,B,...     fpga_chunksize grid (default 64,128,256)\n"
      "  --resources=C:F,...  (num_cpu_t, num_fpga_t) grid, colon-separated\n"
      "                       pairs (default 1:0,0:1,1:1)\n"
      "  --out=PATH           sweep results CSV (default stdout)\n"
      "\n"
      "exit status: 0 success, 1 verification or engine failure, 2 usage\n";
}

}  // namespace hetfor

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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hetfor/engine.hpp"
#include "hetfor/params.hpp"

namespace hetfor {

/// Outcome of one benchmark run.
struct BenchmarkResult {
  RunReport report;
  double throughput = 0.0;        // output-matrix elements per second
  double energy = 0.0;            // joules, from the params' power model
  double max_abs_diff = 0.0;      // output vs. reference oracle
  bool ok = false;                // run finished and verified exactly
  std::string message;            // failure description when !ok
};

/// Builds the square GEMM problem (A, B seeded from params.seed), runs
/// parallel_for over the C rows, verifies the output against the reference
/// oracle, computes throughput and modeled energy, and writes the trace CSV
/// if params.trace_path is set — also when the run failed, so failures can
/// be examined. Throws only for I/O problems (trace writing); run and
/// verification failures are reported in the result.
BenchmarkResult run_benchmark(const RunParams& params);

/// One sweep cell result; failed cells carry status "error" and a message,
/// and the sweep continues.
struct SweepRow {
  int num_cpu_t = 0;
  int num_fpga_t = 0;
  std::int64_t fpga_chunksize = 0;
  std::string status;  // "ok" or "error"
  double wall_time = 0.0;
  double throughput = 0.0;
  double energy = 0.0;
  double final_f = 0.0;
  std::string message;
};

/// Runs base params over the grid resources x chunk_sizes (resources outer,
/// chunks inner; resources are (num_cpu_t, num_fpga_t) pairs). Always
/// returns one row per grid cell. Per-cell trace files are not written.
std::vector<SweepRow> run_sweep(
    const RunParams& base, const std::vector<std::pair<int, int>>& resources,
    const std::vector<std::int64_t>& chunk_sizes);

/// Header: num_cpu_t,num_fpga_t,fpga_chunksize,status,wall_time,throughput,
/// energy,final_f,message
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace hetfor

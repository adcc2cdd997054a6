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

#include "hetfor/benchmark.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hetfor/energy.hpp"
#include "hetfor/gemm.hpp"
#include "hetfor/matrix.hpp"
#include "hetfor/trace.hpp"

namespace hetfor {
namespace {

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

BenchmarkResult run_benchmark(const RunParams& params) {
  params.validate();
  const std::int64_t n = params.matrix_size;
  const Matrix A = random_matrix(n, n, params.seed);
  const Matrix B = random_matrix(n, n, params.seed + 1);
  Matrix C(n, n);
  // A tile wider than B degenerates to a single tile.
  const GemmProblem prob(A, B, C, std::min(params.tile_cols, n));
  const LoopBody body = make_gemm_body(prob);

  BenchmarkResult result;
  result.report = parallel_for(0, n, body, params.engine_config());
  if (!params.trace_path.empty()) {
    write_trace(result.report.trace, params.trace_path);
  }
  result.energy = compute_energy(result.report, params.power);
  if (result.report.wall_time > 0.0) {
    result.throughput = static_cast<double>(n) * static_cast<double>(n) /
                        result.report.wall_time;
  }

  if (!result.report.ok()) {
    const RunError& e = *result.report.error;
    std::ostringstream msg;
    msg << "engine failure on " << to_string(e.kind) << e.resource_id
        << " chunk [" << e.chunk_begin << ", " << e.chunk_end
        << "): " << e.message;
    result.message = msg.str();
    return result;
  }

  const Matrix C_ref = gemm_reference(A, B);
  result.max_abs_diff = verify(C, C_ref);
  if (result.max_abs_diff != 0.0) {
    result.message =
        "verification failed: max |C - C_ref| = " + format_g(result.max_abs_diff);
    return result;
  }
  result.ok = true;
  return result;
}

std::vector<SweepRow> run_sweep(
    const RunParams& base, const std::vector<std::pair<int, int>>& resources,
    const std::vector<std::int64_t>& chunk_sizes) {
  if (resources.empty() || chunk_sizes.empty()) {
    throw std::invalid_argument("run_sweep: the grid must be nonempty");
  }
  std::vector<SweepRow> rows;
  rows.reserve(resources.size() * chunk_sizes.size());
  for (const auto& [cpu_t, fpga_t] : resources) {
    for (const std::int64_t chunk : chunk_sizes) {
      SweepRow row;
      row.num_cpu_t = cpu_t;
      row.num_fpga_t = fpga_t;
      row.fpga_chunksize = chunk;
      try {
        RunParams cell = base;
        cell.num_cpu_t = cpu_t;
        cell.num_fpga_t = fpga_t;
        cell.fpga_chunksize = chunk;
        cell.trace_path.clear();
        const BenchmarkResult r = run_benchmark(cell);
        row.wall_time = r.report.wall_time;
        row.throughput = r.throughput;
        row.energy = r.energy;
        row.final_f = r.report.final_f;
        row.status = r.ok ? "ok" : "error";
        row.message = r.message;
      } catch (const std::exception& e) {
        row.status = "error";
        row.message = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "num_cpu_t,num_fpga_t,fpga_chunksize,status,wall_time,throughput,"
         "energy,final_f,message\n";
  for (const SweepRow& r : rows) {
    out << r.num_cpu_t << ',' << r.num_fpga_t << ',' << r.fpga_chunksize
        << ',' << r.status << ',' << format_g(r.wall_time) << ','
        << format_g(r.throughput) << ',' << format_g(r.energy) << ','
        << format_g(r.final_f) << ',' << csv_escape(r.message) << '\n';
  }
}

}  // namespace hetfor

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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hetfor/benchmark.hpp"
#include "hetfor/params.hpp"

namespace {

using hetfor::BenchmarkResult;
using hetfor::ResourceKind;
using hetfor::RunParams;
using hetfor::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void print_summary(const RunParams& p, const BenchmarkResult& r) {
  std::int64_t cc_chunks = 0;
  std::int64_t fc_chunks = 0;
  for (const auto& rec : r.report.trace) {
    (rec.resource_kind == ResourceKind::CC ? cc_chunks : fc_chunks)++;
  }
  std::cout << "config: num_cpu_t=" << p.num_cpu_t
            << " num_fpga_t=" << p.num_fpga_t
            << " fpga_chunksize=" << p.fpga_chunksize
            << " matrix=" << p.matrix_size << " tile_cols=" << p.tile_cols
            << " clock="
            << (p.clock_mode == hetfor::ClockMode::WallClock ? "wall"
                                                             : "virtual")
            << " wait="
            << (p.wait_discipline == hetfor::WaitDiscipline::Spin
                    ? "spin"
                    : "interrupt")
            << " seed=" << p.seed
            << (p.preset.empty() ? "" : " preset=" + p.preset) << '\n';
  std::cout << "model: fc_units=" << p.fc_units
            << " fc_throughput=" << fmt(p.fc_throughput)
            << " fc_overhead=" << fmt(p.fc_overhead)
            << " enable_irq=" << (p.enable_irq ? 1 : 0)
            << " cc_throughput=" << fmt(p.cc_throughput) << '\n';
  std::cout << "status: " << (r.ok ? "ok" : "failed") << '\n';
  if (!r.message.empty()) std::cout << "message: " << r.message << '\n';
  std::cout << "wall_time_s: " << fmt(r.report.wall_time) << '\n';
  std::cout << "throughput_elems_per_s: " << fmt(r.throughput) << '\n';
  std::cout << "energy_j: " << fmt(r.energy) << '\n';
  std::cout << "final_f: " << fmt(r.report.final_f) << '\n';
  std::cout << "iterations_done: " << r.report.iterations_done << '\n';
  std::cout << "chunks: total=" << r.report.trace.size()
            << " cc=" << cc_chunks << " fc=" << fc_chunks << '\n';
  std::cout << "verify_max_abs_diff: " << fmt(r.max_abs_diff) << '\n';
  std::cout << "overran_model_chunks: " << r.report.overran_model_chunks
            << '\n';
  if (!p.trace_path.empty()) {
    std::cout << "trace: " << p.trace_path << '\n';
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      return parts;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

long long parse_ll_or_usage(const std::string& v, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError(what + ": expected an integer, got '" + v + "'");
  }
}

int run_sweep_command(const std::vector<std::string>& args) {
  std::vector<std::int64_t> chunks = {64, 128, 256};
  std::vector<std::pair<int, int>> resources = {{1, 0}, {0, 1}, {1, 1}};
  std::string out_path;
  std::vector<std::string> base_args = {"1", "0", "1"};  // grid overrides

  for (const std::string& arg : args) {
    if (arg.rfind("--chunks=", 0) == 0) {
      chunks.clear();
      for (const std::string& part : split(arg.substr(9), ',')) {
        chunks.push_back(parse_ll_or_usage(part, "--chunks"));
      }
    } else if (arg.rfind("--resources=", 0) == 0) {
      resources.clear();
      for (const std::string& part : split(arg.substr(12), ',')) {
        const auto pair = split(part, ':');
        if (pair.size() != 2) {
          throw UsageError("--resources: expected C:F pairs, got '" + part +
                           "'");
        }
        resources.emplace_back(
            static_cast<int>(parse_ll_or_usage(pair[0], "--resources")),
            static_cast<int>(parse_ll_or_usage(pair[1], "--resources")));
      }
    } else if (arg.rfind("--out=", 0) == 0) {
      out_path = arg.substr(6);
    } else if (arg.rfind("--", 0) == 0) {
      base_args.push_back(arg);  // forwarded to the base RunParams
    } else {
      throw UsageError("sweep takes no positional arguments: '" + arg + "'");
    }
  }
  if (chunks.empty() || resources.empty()) {
    throw UsageError("sweep grid must be nonempty");
  }

  const RunParams base = hetfor::parse_params(base_args);
  const std::vector<hetfor::SweepRow> rows =
      hetfor::run_sweep(base, resources, chunks);

  if (out_path.empty()) {
    hetfor::write_sweep_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot open '" << out_path << "'\n";
      return kExitFailure;
    }
    hetfor::write_sweep_csv(rows, out);
    out.flush();
    if (!out) {
      std::cerr << "error: writing '" << out_path << "' failed\n";
      return kExitFailure;
    }
    std::cout << "sweep: " << rows.size() << " rows -> " << out_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const std::string& arg : args) {
    if (arg == "--help" || arg == "-h") {
      std::cout << hetfor::usage_text();
      return kExitOk;
    }
  }

  try {
    if (!args.empty() && args[0] == "sweep") {
      return run_sweep_command(
          std::vector<std::string>(args.begin() + 1, args.end()));
    }
    const RunParams params = hetfor::parse_params(args);
    const BenchmarkResult result = hetfor::run_benchmark(params);
    print_summary(params, result);
    return result.ok ? kExitOk : kExitFailure;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << hetfor::usage_text();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

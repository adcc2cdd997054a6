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
#include <optional>
#include <string>
#include <vector>

#include "hetfor/accel.hpp"
#include "hetfor/body.hpp"
#include "hetfor/chunk.hpp"
#include "hetfor/clock.hpp"
#include "hetfor/scheduler.hpp"
#include "hetfor/trace.hpp"

namespace hetfor {

/// One unit of parallelism in the run: a CPU core token (CC) or an
/// accelerator compute-unit token (FC). Each token is bound to a persistent
/// worker that loops {claim chunk, execute, record timing} until the
/// iteration space is exhausted. `ordinal` is the token's dense index across
/// both kinds (CCs first), used as its virtual-clock identity.
struct Token {
  ResourceKind kind = ResourceKind::CC;
  int id = 0;       // index within its kind: CC0.., FC0..
  int ordinal = 0;  // index across all tokens

  friend bool operator==(const Token&, const Token&) = default;
};

/// nCores CC tokens followed by nAccel FC tokens, with stable ids CC0..,
/// FC0.. .
std::vector<Token> make_tokens(const SchedulerConfig& cfg);

/// Everything parallel_for needs besides the loop itself.
struct EngineConfig {
  SchedulerConfig sched;
  AccelModel accel;
  WaitDiscipline wait_discipline = WaitDiscipline::Interrupt;
  ClockMode clock_mode = ClockMode::WallClock;

  /// Virtual-time cost model for one CPU iteration, in seconds. Required
  /// (> 0) when virtual time is used with CPU workers; ignored in wall-clock
  /// mode, where CPU chunks are really timed.
  double cpu_seconds_per_iter = 0.0;

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

/// Busy seconds accumulated by one token (sum of its chunk durations).
struct TokenSummary {
  ResourceKind kind = ResourceKind::CC;
  int id = 0;
  double busy_seconds = 0.0;
};

/// First failure observed during a run. The chunk range records how far the
/// failing resource got: iterations in [chunk_begin, chunk_end) may have been
/// partially executed.
struct RunError {
  std::string message;
  ResourceKind kind = ResourceKind::CC;
  int resource_id = 0;
  std::int64_t chunk_begin = 0;
  std::int64_t chunk_end = 0;
};

/// Complete account of one parallel_for run.
struct RunReport {
  double wall_time = 0.0;                     // seconds, run start to return
  std::vector<TokenSummary> per_resource_busy;  // one entry per token
  std::vector<TraceRecord> trace;             // ordered by claim sequence
  std::int64_t iterations_done = 0;           // iterations completed
  double final_f = 1.0;                       // speed factor at run end
  std::int64_t overran_model_chunks = 0;      // FC chunks slower than modeled
  std::optional<RunError> error;              // first failure, if any

  bool ok() const { return !error.has_value(); }
};

/// Executes iterations [begin, end) exactly once across nCores CPU tokens
/// and nAccel accelerator tokens with dynamic chunk partitioning.
///
/// Blocks the caller until every token has quiesced. On the first operator
/// failure the run aborts: other tokens stop at their next claim, the report
/// carries the error plus the partial trace, and no chunk executes after
/// return. Throws std::invalid_argument only for invalid configuration or
/// end < begin; operator failures are reported, not thrown.
RunReport parallel_for(std::int64_t begin, std::int64_t end,
                       const LoopBody& body, const EngineConfig& cfg);

}  // namespace hetfor

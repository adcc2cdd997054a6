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

#include "hetfor/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace hetfor {

std::vector<Token> make_tokens(const SchedulerConfig& cfg) {
  cfg.validate();
  std::vector<Token> tokens;
  tokens.reserve(
      static_cast<std::size_t>(cfg.num_cpu_workers + cfg.num_accel_workers));
  int ordinal = 0;
  for (int i = 0; i < cfg.num_cpu_workers; ++i) {
    tokens.push_back(Token{ResourceKind::CC, i, ordinal++});
  }
  for (int i = 0; i < cfg.num_accel_workers; ++i) {
    tokens.push_back(Token{ResourceKind::FC, i, ordinal++});
  }
  return tokens;
}

void EngineConfig::validate() const {
  sched.validate();
  accel.validate();
  if (sched.num_accel_workers > accel.units) {
    throw std::invalid_argument(
        "EngineConfig: accelerator tokens exceed available compute units");
  }
  if (sched.num_accel_workers > 0 &&
      wait_discipline == WaitDiscipline::Interrupt &&
      !accel.completion_irq_enabled) {
    throw std::invalid_argument(
        "EngineConfig: interrupt waits require completion notifications "
        "(enable them or use spin waits)");
  }
  if (!std::isfinite(cpu_seconds_per_iter) || cpu_seconds_per_iter < 0.0) {
    throw std::invalid_argument(
        "EngineConfig: cpu_seconds_per_iter must be finite and >= 0");
  }
  if (clock_mode == ClockMode::VirtualTime && sched.num_cpu_workers > 0 &&
      cpu_seconds_per_iter <= 0.0) {
    throw std::invalid_argument(
        "EngineConfig: virtual time with CPU workers needs a CPU cost model "
        "(cpu_seconds_per_iter > 0)");
  }
}

namespace {

// Durations are clamped to this before entering timing statistics so a
// too-fast-to-measure chunk (noop body on a coarse clock) stays positive.
constexpr double kMinMeasurableSeconds = 1e-9;

// State shared by every worker of one parallel_for call.
struct RunState {
  RunState(const LoopBody& body_in, const EngineConfig& cfg_in,
           ChunkScheduler& sched_in, Clock& clock_in,
           std::vector<std::unique_ptr<FcUnit>>& units_in)
      : body(body_in),
        cfg(cfg_in),
        sched(sched_in),
        clock(clock_in),
        units(units_in) {}

  const LoopBody& body;
  const EngineConfig& cfg;
  ChunkScheduler& sched;
  Clock& clock;
  std::vector<std::unique_ptr<FcUnit>>& units;

  std::atomic<bool> abort{false};
  std::atomic<std::int64_t> overruns{0};
  std::mutex error_mu;
  std::optional<RunError> first_error;

  // First failure wins; every failure requests an abort.
  void fail(RunError e) {
    {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!first_error) first_error = std::move(e);
    }
    abort.store(true, std::memory_order_release);
  }
};

// What one token produced; merged into the report after quiescence.
struct TokenResult {
  std::vector<TraceRecord> trace;
  double busy_seconds = 0.0;
};

// Stage 1 (claim, serialized in the scheduler) + Stage 2 (execute, parallel)
// until the space is exhausted or the run aborts. Caller handles clock
// attach/retire.
void token_loop(const Token& token, RunState& rs, TokenResult& out) {
  const int w = token.ordinal;
  const bool virtual_time = rs.clock.mode() == ClockMode::VirtualTime;

  while (!rs.abort.load(std::memory_order_acquire)) {
    const std::optional<ClaimedChunk> claimed =
        token.kind == ResourceKind::CC ? rs.sched.next_cpu_chunk(token.id)
                                       : rs.sched.next_accel_chunk(token.id);
    if (!claimed) break;  // space exhausted
    const ChunkDescriptor& chunk = claimed->chunk;

    double t_start = 0.0;
    double duration = 0.0;
    bool failed = false;
    std::string error;

    if (token.kind == ResourceKind::CC) {
      t_start = rs.clock.now();
      try {
        rs.body.cpu_operator(chunk.begin, chunk.end);
      } catch (const std::exception& e) {
        failed = true;
        error = e.what();
      } catch (...) {
        failed = true;
        error = "unknown error in cpu_operator";
      }
      if (!failed && virtual_time) {
        // Real compute ran while virtual time was frozen; the chunk's
        // duration comes from the CPU cost model.
        rs.clock.sleep_until(
            w, t_start + static_cast<double>(chunk.size()) *
                             rs.cfg.cpu_seconds_per_iter);
      }
      duration = std::max(rs.clock.now() - t_start, kMinMeasurableSeconds);
    } else {
      FcUnit& unit = *rs.units[static_cast<std::size_t>(token.id)];
      try {
        const OffloadHandle handle = unit.offload(chunk, rs.body, w);
        t_start = handle.submitted_at();
        const CompletionRecord rec =
            unit.wait(handle, rs.cfg.wait_discipline, w);
        duration = std::max(rec.duration, kMinMeasurableSeconds);
        if (rec.overran_model) {
          rs.overruns.fetch_add(1, std::memory_order_relaxed);
        }
        if (rec.failed) {
          failed = true;
          error = rec.error.empty() ? "accel_operator failed" : rec.error;
        }
      } catch (const std::exception& e) {
        failed = true;
        error = e.what();
        t_start = rs.clock.now();
        duration = kMinMeasurableSeconds;
      }
    }

    if (failed) {
      rs.fail(RunError{std::move(error), token.kind, token.id, chunk.begin,
                       chunk.end});
      break;
    }

    rs.sched.record_chunk_timing(token.kind, chunk.size(), duration);

    TraceRecord rec;
    rec.seq = chunk.seq;
    rec.resource_kind = token.kind;
    rec.resource_id = token.id;
    rec.begin = chunk.begin;
    rec.end = chunk.end;
    rec.size = chunk.size();
    rec.t_start = t_start;
    rec.t_end = t_start + duration;
    rec.duration = duration;
    rec.f_after = claimed->speed_factor;
    rec.r_before = claimed->remaining_before;
    out.trace.push_back(rec);
    out.busy_seconds += duration;
  }
}

}  // namespace

RunReport parallel_for(std::int64_t begin, std::int64_t end,
                       const LoopBody& body, const EngineConfig& cfg) {
  cfg.validate();
  if (end < begin) {
    throw std::invalid_argument("parallel_for: end must be >= begin");
  }
  if (!body.cpu_operator && cfg.sched.num_cpu_workers > 0) {
    throw std::invalid_argument(
        "parallel_for: cpu_operator required with CPU workers");
  }
  if (!body.accel_operator && cfg.sched.num_accel_workers > 0) {
    throw std::invalid_argument(
        "parallel_for: accel_operator required with accelerator workers");
  }

  const std::vector<Token> tokens = make_tokens(cfg.sched);
  ChunkScheduler sched(begin, end, cfg.sched);

  RunReport report;
  report.per_resource_busy.reserve(tokens.size());
  for (const Token& t : tokens) {
    report.per_resource_busy.push_back(TokenSummary{t.kind, t.id, 0.0});
  }
  report.final_f = sched.speed_factor();
  if (end == begin) {
    return report;  // nothing to run; no workers spawned
  }

  std::unique_ptr<Clock> clock;
  if (cfg.clock_mode == ClockMode::VirtualTime) {
    clock = std::make_unique<VirtualClock>(static_cast<int>(tokens.size()));
  } else {
    clock = std::make_unique<WallClock>();
  }

  std::vector<std::unique_ptr<FcUnit>> units;
  units.reserve(static_cast<std::size_t>(cfg.sched.num_accel_workers));
  for (int i = 0; i < cfg.sched.num_accel_workers; ++i) {
    units.push_back(std::make_unique<FcUnit>(i, cfg.accel, *clock));
  }

  RunState rs(body, cfg, sched, *clock, units);
  std::vector<TokenResult> results(tokens.size());

  std::vector<std::thread> workers;
  workers.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    workers.emplace_back([&rs, &token = tokens[i], &out = results[i]] {
      bool attached = false;
      try {
        rs.clock.attach(token.ordinal);
        attached = true;
        token_loop(token, rs, out);
        rs.clock.retire(token.ordinal);
      } catch (const std::exception& e) {
        rs.fail(RunError{std::string("engine worker error: ") + e.what(),
                         token.kind, token.id, 0, 0});
        if (attached) {
          // Best effort: pass the virtual-time turn on if we still hold it,
          // so the remaining workers can drain and quiesce.
          try {
            rs.clock.retire(token.ordinal);
          } catch (...) {
          }
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();

  report.wall_time = clock->now();
  report.final_f = sched.speed_factor();
  report.overran_model_chunks = rs.overruns.load(std::memory_order_relaxed);
  report.error = std::move(rs.first_error);

  for (std::size_t i = 0; i < results.size(); ++i) {
    report.per_resource_busy[i].busy_seconds = results[i].busy_seconds;
    report.trace.insert(report.trace.end(), results[i].trace.begin(),
                        results[i].trace.end());
  }
  std::sort(report.trace.begin(), report.trace.end(),
            [](const TraceRecord& a, const TraceRecord& b) {
              return a.seq < b.seq;
            });
  for (const TraceRecord& rec : report.trace) {
    report.iterations_done += rec.size;
  }
  return report;
}

}  // namespace hetfor

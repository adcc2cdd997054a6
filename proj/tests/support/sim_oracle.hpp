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

// Independent sequential oracle for virtual-time runs.
//
// This is a from-scratch re-implementation of the runtime's observable
// semantics — chunk sizing, the timing EWMA, and the discrete-event token
// schedule — in one single-threaded event loop. It shares no code with the
// engine, scheduler, or clock, so agreement between the two (bit-for-bit,
// including every traced double) is strong evidence the concurrent
// implementation realizes the intended deterministic semantics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "hetfor/engine.hpp"

namespace hetfor::testing {

struct SimResult {
  std::vector<TraceRecord> trace;  // sorted by seq
  double wall_time = 0.0;
  double final_f = 1.0;
  std::int64_t iterations_done = 0;
};

inline SimResult simulate_virtual_run(std::int64_t begin, std::int64_t end,
                                      const EngineConfig& cfg) {
  const int n_cpu = static_cast<int>(cfg.sched.num_cpu_workers);
  const int n_fc = static_cast<int>(cfg.sched.num_accel_workers);
  const int n_workers = n_cpu + n_fc;
  const double alpha = cfg.sched.smoothing_alpha;
  const double f_lo = 1e-3;
  const double f_hi = 1e3;

  // Scheduler replica.
  std::int64_t next_index = begin;
  std::int64_t remaining = end - begin;
  std::uint64_t seq = 0;
  double f = std::clamp(cfg.sched.speed_factor_init, f_lo, f_hi);
  std::optional<double> cc_per_iter;
  std::optional<double> fc_per_iter;

  const auto record_timing = [&](ResourceKind kind, std::int64_t size,
                                 double duration) {
    duration = std::max(duration, 1e-9);
    const double per_iter = duration / static_cast<double>(size);
    auto& slot = (kind == ResourceKind::CC) ? cc_per_iter : fc_per_iter;
    slot = slot.has_value() ? alpha * per_iter + (1.0 - alpha) * *slot
                            : per_iter;
    if (cc_per_iter && fc_per_iter) {
      f = std::clamp(*cc_per_iter / *fc_per_iter, f_lo, f_hi);
    }
  };

  // Token table: CCs first, then FCs (ordinal = index).
  struct Worker {
    ResourceKind kind;
    int id;
  };
  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(n_workers));
  for (int i = 0; i < n_cpu; ++i) workers.push_back({ResourceKind::CC, i});
  for (int i = 0; i < n_fc; ++i) workers.push_back({ResourceKind::FC, i});

  std::vector<std::optional<TraceRecord>> inflight(
      static_cast<std::size_t>(n_workers));

  // Min-heap of wake events; ties wake the lower ordinal first.
  using Event = std::pair<double, int>;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;
  for (int w = 0; w < n_workers; ++w) queue.push({0.0, w});

  SimResult result;
  while (!queue.empty()) {
    const auto [t, w] = queue.top();
    queue.pop();
    result.wall_time = std::max(result.wall_time, t);
    const Worker& worker = workers[static_cast<std::size_t>(w)];

    if (inflight[static_cast<std::size_t>(w)]) {
      const TraceRecord& done = *inflight[static_cast<std::size_t>(w)];
      record_timing(done.resource_kind, done.size, done.duration);
      result.trace.push_back(done);
      inflight[static_cast<std::size_t>(w)].reset();
    }

    if (remaining <= 0) continue;  // token observes Empty and retires

    std::int64_t size = 0;
    if (worker.kind == ResourceKind::FC) {
      size = std::min(cfg.sched.accel_chunk_size, remaining);
    } else {
      const double ideal = std::min(
          static_cast<double>(cfg.sched.accel_chunk_size) / f,
          static_cast<double>(remaining) / (f + static_cast<double>(n_cpu)));
      size = static_cast<std::int64_t>(std::floor(ideal));
      size = std::max(size, cfg.sched.min_cpu_chunk);
      size = std::min(size, remaining);
    }

    TraceRecord rec;
    rec.seq = seq++;
    rec.resource_kind = worker.kind;
    rec.resource_id = worker.id;
    rec.begin = next_index;
    rec.end = next_index + size;
    rec.size = size;
    rec.t_start = t;
    rec.f_after = f;
    rec.r_before = remaining;
    next_index += size;
    remaining -= size;

    double wake = 0.0;
    if (worker.kind == ResourceKind::CC) {
      // The runtime computes the wake timestamp first and derives the traced
      // duration from it, so the oracle does the same.
      wake = t + static_cast<double>(size) * cfg.cpu_seconds_per_iter;
      rec.duration = wake - t;
    } else {
      rec.duration = cfg.accel.overhead +
                     static_cast<double>(size) / cfg.accel.throughput;
      wake = t + rec.duration;
    }
    // The runtime floors traced durations at its measurability limit.
    rec.duration = std::max(rec.duration, 1e-9);
    rec.t_end = t + rec.duration;

    inflight[static_cast<std::size_t>(w)] = rec;
    queue.push({wake, w});
  }

  std::sort(result.trace.begin(), result.trace.end(),
            [](const TraceRecord& a, const TraceRecord& b) {
              return a.seq < b.seq;
            });
  for (const TraceRecord& rec : result.trace) {
    result.iterations_done += rec.size;
  }
  result.final_f = f;
  return result;
}

}  // namespace hetfor::testing

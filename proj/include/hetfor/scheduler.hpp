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
#include <mutex>
#include <optional>

#include "hetfor/chunk.hpp"

namespace hetfor {

/// Partitioning parameters for one parallel_for run.
struct SchedulerConfig {
  std::int64_t num_cpu_workers = 0;    // CC tokens
  std::int64_t num_accel_workers = 0;  // FC tokens
  std::int64_t accel_chunk_size = 1;   // iterations per FC chunk
  double speed_factor_init = 1.0;      // initial FC-vs-CC speed guess, > 0
  double smoothing_alpha = 0.5;        // EWMA weight for new timing samples
  std::int64_t min_cpu_chunk = 1;      // smallest nonzero CC chunk

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

/// A successfully claimed chunk plus the scheduler values it was sized from.
/// remaining_before and speed_factor are recorded in the trace so every CC
/// chunk size can be recomputed from the trace alone.
struct ClaimedChunk {
  ChunkDescriptor chunk;
  std::int64_t remaining_before = 0;
  double speed_factor = 1.0;  // value in effect when the chunk was sized
};

/// The online speed-factor estimate is confined to this range so CPU chunk
/// sizes stay finite and nonzero under degenerate timings.
inline constexpr double kSpeedFactorFloor = 1e-3;
inline constexpr double kSpeedFactorCeil = 1e3;

/// Central chunk dispenser for one run, shared by all worker tokens.
///
/// FC chunks have constant size (accel_chunk_size, clamped to what is left).
/// CC chunks are sized adaptively: a CC receives
///
///   floor(min(accel_chunk_size / f, remaining / (f + num_cpu_workers)))
///
/// clamped to [min_cpu_chunk, remaining], where f is the current estimate of
/// how much faster one FC is than one CC per iteration. The left operand
/// makes a CPU core spend about as long per chunk as an FC; the right one is
/// a guided self-scheduling tail that shrinks chunks as the space drains.
///
/// f is re-estimated after every executed chunk from per-kind EWMAs of
/// seconds-per-iteration: f = cc_time_per_iter / fc_time_per_iter, clamped
/// to [kSpeedFactorFloor, kSpeedFactorCeil].
///
/// Every public call is a single short critical section: no iteration is
/// ever assigned twice, none is dropped, and calls never block on work.
class ChunkScheduler {
 public:
  /// Covers [begin, end). Validates cfg and the range.
  ChunkScheduler(std::int64_t begin, std::int64_t end,
                 const SchedulerConfig& cfg);

  ChunkScheduler(const ChunkScheduler&) = delete;
  ChunkScheduler& operator=(const ChunkScheduler&) = delete;

  /// Claims the next constant-size FC chunk. Empty iff the space is drained.
  std::optional<ClaimedChunk> next_accel_chunk(int resource_id);

  /// Claims the next adaptively sized CC chunk. Empty iff the space is
  /// drained.
  std::optional<ClaimedChunk> next_cpu_chunk(int resource_id);

  /// Folds one executed chunk's timing into the per-kind EWMA and recomputes
  /// the speed factor once both kinds have been observed. Returns the new
  /// speed factor. size and duration must be positive.
  double record_chunk_timing(ResourceKind kind, std::int64_t size,
                             double duration_seconds);

  /// Current speed factor (speed_factor_init until both kinds observed).
  double speed_factor() const;

  /// Iterations not yet assigned to any chunk.
  std::int64_t remaining() const;

  /// Number of chunks issued so far.
  std::uint64_t chunks_issued() const;

  const SchedulerConfig& config() const { return cfg_; }

 private:
  ClaimedChunk take_locked(std::int64_t size, ResourceKind kind,
                           int resource_id);

  SchedulerConfig cfg_;
  mutable std::mutex mu_;
  std::int64_t next_index_ = 0;
  std::int64_t remaining_ = 0;
  std::uint64_t chunks_issued_ = 0;
  double speed_factor_ = 1.0;
  std::optional<double> cc_time_per_iter_;
  std::optional<double> fc_time_per_iter_;
};

}  // namespace hetfor

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

#include "hetfor/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetfor {

std::string_view to_string(ResourceKind kind) {
  return kind == ResourceKind::CC ? "CC" : "FC";
}

void SchedulerConfig::validate() const {
  if (num_cpu_workers < 0) {
    throw std::invalid_argument("num_cpu_workers must be >= 0");
  }
  if (num_accel_workers < 0) {
    throw std::invalid_argument("num_accel_workers must be >= 0");
  }
  if (num_cpu_workers + num_accel_workers < 1) {
    throw std::invalid_argument("at least one worker (CC or FC) is required");
  }
  if (accel_chunk_size < 1) {
    throw std::invalid_argument("accel_chunk_size must be >= 1");
  }
  if (!(speed_factor_init > 0.0) || !std::isfinite(speed_factor_init)) {
    throw std::invalid_argument("speed_factor_init must be > 0");
  }
  if (!(smoothing_alpha >= 0.0 && smoothing_alpha <= 1.0)) {
    throw std::invalid_argument("smoothing_alpha must be in [0, 1]");
  }
  if (min_cpu_chunk < 1) {
    throw std::invalid_argument("min_cpu_chunk must be >= 1");
  }
}

ChunkScheduler::ChunkScheduler(std::int64_t begin, std::int64_t end,
                               const SchedulerConfig& cfg)
    : cfg_(cfg),
      next_index_(begin),
      remaining_(end - begin),
      speed_factor_(
          std::clamp(cfg.speed_factor_init, kSpeedFactorFloor, kSpeedFactorCeil)) {
  cfg_.validate();
  if (end < begin) {
    throw std::invalid_argument("iteration range end must be >= begin");
  }
}

ClaimedChunk ChunkScheduler::take_locked(std::int64_t size, ResourceKind kind,
                                         int resource_id) {
  ClaimedChunk claimed;
  claimed.remaining_before = remaining_;
  claimed.speed_factor = speed_factor_;
  claimed.chunk.begin = next_index_;
  claimed.chunk.end = next_index_ + size;
  claimed.chunk.resource_kind = kind;
  claimed.chunk.resource_id = resource_id;
  claimed.chunk.seq = chunks_issued_++;
  next_index_ += size;
  remaining_ -= size;
  return claimed;
}

std::optional<ClaimedChunk> ChunkScheduler::next_accel_chunk(int resource_id) {
  std::lock_guard<std::mutex> lock(mu_);
  if (remaining_ == 0) {
    return std::nullopt;
  }
  const std::int64_t size = std::min(cfg_.accel_chunk_size, remaining_);
  return take_locked(size, ResourceKind::FC, resource_id);
}

std::optional<ClaimedChunk> ChunkScheduler::next_cpu_chunk(int resource_id) {
  std::lock_guard<std::mutex> lock(mu_);
  if (remaining_ == 0) {
    return std::nullopt;
  }
  const double ideal =
      std::min(static_cast<double>(cfg_.accel_chunk_size) / speed_factor_,
               static_cast<double>(remaining_) /
                   (speed_factor_ + static_cast<double>(cfg_.num_cpu_workers)));
  auto size = static_cast<std::int64_t>(std::floor(ideal));
  size = std::max(size, cfg_.min_cpu_chunk);
  size = std::min(size, remaining_);
  return take_locked(size, ResourceKind::CC, resource_id);
}

double ChunkScheduler::record_chunk_timing(ResourceKind kind,
                                           std::int64_t size,
                                           double duration_seconds) {
  if (size <= 0) {
    throw std::invalid_argument("record_chunk_timing: size must be > 0");
  }
  if (!(duration_seconds > 0.0) || !std::isfinite(duration_seconds)) {
    throw std::invalid_argument("record_chunk_timing: duration must be > 0");
  }
  const double per_iter = duration_seconds / static_cast<double>(size);

  std::lock_guard<std::mutex> lock(mu_);
  auto& slot =
      (kind == ResourceKind::CC) ? cc_time_per_iter_ : fc_time_per_iter_;
  if (!slot.has_value()) {
    slot = per_iter;  // first observation replaces outright
  } else {
    slot = cfg_.smoothing_alpha * per_iter +
           (1.0 - cfg_.smoothing_alpha) * *slot;
  }
  if (cc_time_per_iter_ && fc_time_per_iter_) {
    speed_factor_ = std::clamp(*cc_time_per_iter_ / *fc_time_per_iter_,
                               kSpeedFactorFloor, kSpeedFactorCeil);
  }
  return speed_factor_;
}

double ChunkScheduler::speed_factor() const {
  std::lock_guard<std::mutex> lock(mu_);
  return speed_factor_;
}

std::int64_t ChunkScheduler::remaining() const {
  std::lock_guard<std::mutex> lock(mu_);
  return remaining_;
}

std::uint64_t ChunkScheduler::chunks_issued() const {
  std::lock_guard<std::mutex> lock(mu_);
  return chunks_issued_;
}

}  // namespace hetfor

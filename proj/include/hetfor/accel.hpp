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

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "hetfor/body.hpp"
#include "hetfor/chunk.hpp"
#include "hetfor/clock.hpp"

namespace hetfor {

/// Timing model of the accelerator compute units (all units identical).
/// An offload of s iterations is modeled to take overhead + s / throughput
/// seconds. The fixed per-offload overhead is what makes small chunks
/// under-utilize a unit.
struct AccelModel {
  int units = 1;
  double throughput = 1.0;  // iterations per second per unit, > 0
  double overhead = 0.0;    // fixed seconds per offload, >= 0
  bool completion_irq_enabled = true;  // completion notifications generated

  void validate() const;  // throws std::invalid_argument
};

/// overhead + size / throughput; size 0 still pays the overhead.
double modeled_duration(const AccelModel& model, std::int64_t size);

/// How a worker waits for an offload to complete. Spin polls the completion
/// flag and burns its CPU; Interrupt blocks on the completion notification
/// and consumes essentially no compute until woken. Interrupt requires
/// completion_irq_enabled (it would otherwise never wake).
enum class WaitDiscipline { Spin, Interrupt };

enum class OffloadStatus { Pending, Done, Failed };

struct CompletionRecord {
  double duration = 0.0;               // completion - submission, seconds
  double consumed_compute_time = 0.0;  // waiting thread's CPU time in wait()
  bool failed = false;
  bool overran_model = false;  // real compute exceeded the modeled duration
  std::string error;
};

namespace detail {
struct OffloadState;
}

/// Handle to one in-flight offload. Cheap to copy; all copies observe the
/// same completion flag.
class OffloadHandle {
 public:
  OffloadHandle() = default;

  OffloadStatus status() const;
  const ChunkDescriptor& chunk() const;
  double submitted_at() const;
  double modeled_duration() const;

 private:
  friend class FcUnit;
  explicit OffloadHandle(std::shared_ptr<detail::OffloadState> state)
      : state_(std::move(state)) {}

  std::shared_ptr<detail::OffloadState> state_;
};

/// One accelerator compute unit. Executes offloaded chunks for real (so
/// results are always genuine) while the observable completion time follows
/// the AccelModel.
///
/// Wall-clock mode: a dedicated service thread runs the accel operator and
/// pads with sleep up to the modeled duration; if the real compute runs
/// longer, the real time wins and the completion record says so. Virtual
/// mode: the operator runs inline at submission (virtual time is frozen
/// while a worker runs) and completion is scheduled at exactly the modeled
/// duration.
///
/// A unit processes one chunk at a time; offloading to a busy unit throws.
class FcUnit {
 public:
  FcUnit(int id, const AccelModel& model, Clock& clock);
  ~FcUnit();

  FcUnit(const FcUnit&) = delete;
  FcUnit& operator=(const FcUnit&) = delete;

  int id() const { return id_; }

  /// Submits [chunk.begin, chunk.end) and returns immediately.
  /// `submitting_worker` is the virtual-clock ordinal of the caller (ignored
  /// in wall-clock mode).
  OffloadHandle offload(const ChunkDescriptor& chunk, const LoopBody& body,
                        int submitting_worker);

  /// Blocks per the chosen discipline until the offload completes and
  /// reports how long it took and how much CPU the wait consumed.
  CompletionRecord wait(const OffloadHandle& handle,
                        WaitDiscipline discipline, int waiting_worker);

 private:
  void service_loop();

  const int id_;
  const AccelModel model_;
  Clock& clock_;
  std::atomic<bool> busy_{false};

  // Wall-clock service thread and its one-slot mailbox.
  std::mutex mail_mu_;
  std::condition_variable mail_cv_;
  std::shared_ptr<detail::OffloadState> mailbox_;
  bool stop_ = false;
  std::thread service_;
};

}  // namespace hetfor

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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <queue>
#include <vector>

namespace hetfor {

enum class ClockMode { WallClock, VirtualTime };

/// Time source shared by every worker of one run. All timestamps are seconds
/// since run start.
class Clock {
 public:
  virtual ~Clock() = default;

  virtual ClockMode mode() const = 0;
  virtual double now() = 0;

  /// Worker protocol. Wall-clock ignores attach/retire and sleeps for real;
  /// virtual time requires each worker to attach once before its first sleep
  /// and retire when finished (see VirtualClock).
  virtual void attach(int worker) { (void)worker; }
  virtual void retire(int worker) { (void)worker; }
  virtual void sleep_until(int worker, double t) = 0;

  void sleep_for(int worker, double seconds) {
    sleep_until(worker, now() + seconds);
  }
};

/// Real time, monotonic, starting at 0 when constructed.
class WallClock final : public Clock {
 public:
  ClockMode mode() const override { return ClockMode::WallClock; }
  double now() override;
  void sleep_until(int worker, double t) override;

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

/// Deterministic discrete-event clock.
///
/// A fixed set of workers (dense ordinals 0..count-1) cooperate on one
/// virtual timeline. At any instant at most one worker runs; the rest are
/// asleep with a pending wake event. Advancing pops the earliest pending
/// event, moves current time to it (never backwards) and wakes its waiter;
/// simultaneous events fire in ascending worker-ordinal order, so a run is
/// reproducible regardless of OS thread scheduling.
///
/// Nothing fires until every worker has attached, which pins the very first
/// wake order. A worker that is done must retire; once all workers retired
/// the timeline is complete. Waking with no pending event while workers are
/// still active is a scheduler bug and throws.
class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(int worker_count);

  ClockMode mode() const override { return ClockMode::VirtualTime; }
  double now() override;

  /// Registers the calling worker and blocks until it is granted its first
  /// turn (at virtual time 0).
  void attach(int worker) override;

  /// Schedules a wake at max(t, now) for the calling worker and blocks until
  /// that event fires.
  void sleep_until(int worker, double t) override;

  /// Ends the calling worker's participation and hands the timeline to the
  /// next pending event.
  void retire(int worker) override;

 private:
  struct Event {
    double at = 0.0;
    int worker = 0;
    std::uint64_t order = 0;  // push order, last-resort tie key

    bool operator>(const Event& other) const {
      if (at != other.at) return at > other.at;
      if (worker != other.worker) return worker > other.worker;
      return order > other.order;
    }
  };

  // Pops the earliest event and grants its worker the turn. Lock held.
  void fire_next_locked();

  static constexpr int kNoWorker = -1;

  const int total_;
  mutable std::mutex mu_;
  std::deque<std::condition_variable> wake_;  // one per worker, stable addresses
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  double now_ = 0.0;
  int current_ = kNoWorker;
  int attached_ = 0;
  int active_ = 0;
  std::uint64_t order_counter_ = 0;
  bool poisoned_ = false;  // deadlock detected; unblock everyone
};

}  // namespace hetfor

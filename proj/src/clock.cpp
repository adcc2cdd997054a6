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

#include "hetfor/clock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

namespace hetfor {

double WallClock::now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start_)
      .count();
}

void WallClock::sleep_until(int worker, double t) {
  (void)worker;
  std::this_thread::sleep_until(start_ + std::chrono::duration_cast<
                                             std::chrono::steady_clock::duration>(
                                             std::chrono::duration<double>(t)));
}

VirtualClock::VirtualClock(int worker_count)
    : total_(worker_count), wake_(static_cast<std::size_t>(worker_count)) {
  if (worker_count < 1) {
    throw std::invalid_argument("VirtualClock needs at least one worker");
  }
}

double VirtualClock::now() {
  std::lock_guard<std::mutex> lock(mu_);
  return now_;
}

void VirtualClock::fire_next_locked() {
  if (current_ != kNoWorker || attached_ < total_) {
    return;
  }
  if (events_.empty()) {
    if (active_ == 0) {
      return;  // clean termination
    }
    poisoned_ = true;
    for (auto& cv : wake_) cv.notify_all();
    throw std::logic_error(
        "virtual clock deadlock: active workers but no pending events");
  }
  const Event next = events_.top();
  events_.pop();
  now_ = std::max(now_, next.at);
  current_ = next.worker;
  wake_[static_cast<std::size_t>(next.worker)].notify_one();
}

void VirtualClock::attach(int worker) {
  std::unique_lock<std::mutex> lock(mu_);
  if (worker < 0 || worker >= total_) {
    throw std::invalid_argument("attach: worker ordinal out of range");
  }
  events_.push(Event{now_, worker, order_counter_++});
  ++attached_;
  ++active_;
  fire_next_locked();
  wake_[static_cast<std::size_t>(worker)].wait(
      lock, [&] { return current_ == worker || poisoned_; });
  if (poisoned_) {
    throw std::runtime_error("virtual clock stopped after deadlock");
  }
}

void VirtualClock::sleep_until(int worker, double t) {
  std::unique_lock<std::mutex> lock(mu_);
  if (current_ != worker) {
    throw std::logic_error("sleep_until: caller does not hold the turn");
  }
  events_.push(Event{std::max(t, now_), worker, order_counter_++});
  current_ = kNoWorker;
  fire_next_locked();
  wake_[static_cast<std::size_t>(worker)].wait(
      lock, [&] { return current_ == worker || poisoned_; });
  if (poisoned_) {
    throw std::runtime_error("virtual clock stopped after deadlock");
  }
}

void VirtualClock::retire(int worker) {
  std::lock_guard<std::mutex> lock(mu_);
  if (current_ != worker) {
    throw std::logic_error("retire: caller does not hold the turn");
  }
  --active_;
  current_ = kNoWorker;
  fire_next_locked();
}

}  // namespace hetfor

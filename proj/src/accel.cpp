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

#include "hetfor/accel.hpp"

#include <cmath>
#include <ctime>
#include <exception>
#include <stdexcept>

namespace hetfor {

namespace {

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

void cpu_relax() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_ia32_pause();
#endif
}

}  // namespace

void AccelModel::validate() const {
  if (units < 1) {
    throw std::invalid_argument("accel units must be >= 1");
  }
  if (!(throughput > 0.0) || !std::isfinite(throughput)) {
    throw std::invalid_argument("accel throughput must be > 0");
  }
  if (!(overhead >= 0.0) || !std::isfinite(overhead)) {
    throw std::invalid_argument("accel overhead must be >= 0");
  }
}

double modeled_duration(const AccelModel& model, std::int64_t size) {
  if (size < 0) {
    throw std::invalid_argument("modeled_duration: size must be >= 0");
  }
  return model.overhead + static_cast<double>(size) / model.throughput;
}

namespace detail {

struct OffloadState {
  ChunkDescriptor chunk;
  double submitted_at = 0.0;
  double modeled = 0.0;
  std::function<void(std::int64_t, std::int64_t)> run;  // wall-mode job

  // Completion flag. completed_at/overran/error are written before the flag
  // leaves Pending (release) and read after observing it (acquire).
  std::atomic<OffloadStatus> flag{OffloadStatus::Pending};
  double completed_at = 0.0;
  bool overran = false;
  std::string error;

  // One-shot completion notification slot.
  bool notify_enabled = false;
  std::mutex mu;
  std::condition_variable cv;
  bool notified = false;

  // Virtual mode: the operator already ran inline; completion is due at
  // `completion_time` and is finalized by the waiter when the clock gets
  // there.
  bool virtual_mode = false;
  double completion_time = 0.0;
  bool virtual_failed = false;
  std::string virtual_error;

  void complete(OffloadStatus st, double at) {
    completed_at = at;
    flag.store(st, std::memory_order_release);
    if (notify_enabled) {
      std::lock_guard<std::mutex> lock(mu);
      notified = true;
      cv.notify_all();
    }
  }
};

}  // namespace detail

OffloadStatus OffloadHandle::status() const {
  if (!state_) {
    throw std::logic_error("empty offload handle");
  }
  return state_->flag.load(std::memory_order_acquire);
}

const ChunkDescriptor& OffloadHandle::chunk() const { return state_->chunk; }
double OffloadHandle::submitted_at() const { return state_->submitted_at; }
double OffloadHandle::modeled_duration() const { return state_->modeled; }

FcUnit::FcUnit(int id, const AccelModel& model, Clock& clock)
    : id_(id), model_(model), clock_(clock) {
  model_.validate();
  if (clock_.mode() == ClockMode::WallClock) {
    service_ = std::thread([this] { service_loop(); });
  }
}

FcUnit::~FcUnit() {
  if (service_.joinable()) {
    {
      std::lock_guard<std::mutex> lock(mail_mu_);
      stop_ = true;
    }
    mail_cv_.notify_all();
    service_.join();
  }
}

void FcUnit::service_loop() {
  for (;;) {
    std::shared_ptr<detail::OffloadState> job;
    {
      std::unique_lock<std::mutex> lock(mail_mu_);
      mail_cv_.wait(lock, [&] { return stop_ || mailbox_ != nullptr; });
      if (stop_ && !mailbox_) {
        return;
      }
      job = std::move(mailbox_);
      mailbox_ = nullptr;
    }

    bool failed = false;
    std::string error;
    try {
      job->run(job->chunk.begin, job->chunk.end);
    } catch (const std::exception& e) {
      failed = true;
      error = e.what();
    } catch (...) {
      failed = true;
      error = "unknown accelerator operator failure";
    }

    const double compute_end = clock_.now();
    const double target = job->submitted_at + job->modeled;
    if (!failed && compute_end < target) {
      clock_.sleep_until(-1, target);  // pad real compute up to the model
    }
    const double at = clock_.now();
    // Only real compute running past the model counts as an overrun; the
    // padding sleep's own wake-up jitter does not.
    job->overran = !failed && compute_end > target;
    job->error = error;
    busy_.store(false, std::memory_order_release);
    job->complete(failed ? OffloadStatus::Failed : OffloadStatus::Done, at);
  }
}

OffloadHandle FcUnit::offload(const ChunkDescriptor& chunk,
                              const LoopBody& body, int submitting_worker) {
  if (chunk.size() <= 0) {
    throw std::invalid_argument("offload: chunk must be non-empty");
  }
  if (busy_.exchange(true, std::memory_order_acq_rel)) {
    throw std::logic_error("offload: FC unit is busy");
  }

  auto state = std::make_shared<detail::OffloadState>();
  state->chunk = chunk;
  state->modeled = modeled_duration(model_, chunk.size());
  state->notify_enabled = model_.completion_irq_enabled;

  if (clock_.mode() == ClockMode::VirtualTime) {
    state->virtual_mode = true;
    state->submitted_at = clock_.now();
    state->completion_time = state->submitted_at + state->modeled;
    (void)submitting_worker;
    try {
      body.accel_operator(chunk.begin, chunk.end);
    } catch (const std::exception& e) {
      state->virtual_failed = true;
      state->virtual_error = e.what();
    } catch (...) {
      state->virtual_failed = true;
      state->virtual_error = "unknown accelerator operator failure";
    }
    return OffloadHandle(state);
  }

  state->run = body.accel_operator;
  {
    std::lock_guard<std::mutex> lock(mail_mu_);
    state->submitted_at = clock_.now();
    mailbox_ = state;
  }
  mail_cv_.notify_all();
  return OffloadHandle(state);
}

CompletionRecord FcUnit::wait(const OffloadHandle& handle,
                              WaitDiscipline discipline, int waiting_worker) {
  if (!handle.state_) {
    throw std::invalid_argument("wait: empty offload handle");
  }
  if (discipline == WaitDiscipline::Interrupt &&
      !handle.state_->notify_enabled) {
    throw std::invalid_argument(
        "interrupt wait requires completion notifications to be enabled");
  }
  auto& st = *handle.state_;
  CompletionRecord rec;

  if (st.virtual_mode) {
    clock_.sleep_until(waiting_worker, st.completion_time);
    if (st.flag.load(std::memory_order_acquire) == OffloadStatus::Pending) {
      st.error = st.virtual_error;
      busy_.store(false, std::memory_order_release);
      st.complete(st.virtual_failed ? OffloadStatus::Failed : OffloadStatus::Done,
                  st.completion_time);
    }
    // Report the modeled value itself, not completion - submission, so the
    // traced duration matches overhead + size/throughput to the last bit.
    rec.duration = st.modeled;
    rec.consumed_compute_time =
        (discipline == WaitDiscipline::Spin) ? rec.duration : 0.0;
    rec.failed = st.virtual_failed;
    rec.error = st.error;
    return rec;
  }

  const double cpu0 = thread_cpu_seconds();
  if (discipline == WaitDiscipline::Spin) {
    while (st.flag.load(std::memory_order_acquire) == OffloadStatus::Pending) {
      cpu_relax();
    }
  } else {
    std::unique_lock<std::mutex> lock(st.mu);
    st.cv.wait(lock, [&] { return st.notified; });
  }
  rec.consumed_compute_time = thread_cpu_seconds() - cpu0;
  rec.duration = st.completed_at - st.submitted_at;
  rec.failed = st.flag.load(std::memory_order_acquire) == OffloadStatus::Failed;
  rec.overran_model = st.overran;
  rec.error = st.error;
  return rec;
}

}  // namespace hetfor

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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include <doctest.h>

#include "hetfor/accel.hpp"
#include "hetfor/body.hpp"
#include "hetfor/chunk.hpp"
#include "hetfor/clock.hpp"

using hetfor::AccelModel;
using hetfor::ChunkDescriptor;
using hetfor::FcUnit;
using hetfor::LoopBody;
using hetfor::modeled_duration;
using hetfor::OffloadStatus;
using hetfor::ResourceKind;
using hetfor::VirtualClock;
using hetfor::WaitDiscipline;
using hetfor::WallClock;

namespace {

ChunkDescriptor make_chunk(std::int64_t begin, std::int64_t end) {
  ChunkDescriptor c;
  c.begin = begin;
  c.end = end;
  c.resource_kind = ResourceKind::FC;
  c.resource_id = 0;
  c.seq = 0;
  return c;
}

LoopBody noop_body() {
  LoopBody body;
  body.accel_operator = [](std::int64_t, std::int64_t) {};
  return body;
}

}  // namespace

TEST_SUITE("accel-model") {

TEST_CASE("modeled duration is overhead plus size over throughput") {
  AccelModel model;
  model.overhead = 0.001;
  model.throughput = 10000.0;
  CHECK(modeled_duration(model, 128) == 0.001 + 128.0 / 10000.0);
  CHECK(modeled_duration(model, 128) == doctest::Approx(0.0138));
  // Size zero still pays the offload overhead.
  CHECK(modeled_duration(model, 0) == 0.001);
  CHECK_THROWS_AS(modeled_duration(model, -1), std::invalid_argument);
}

TEST_CASE("model parameters are validated") {
  AccelModel model;
  model.units = 0;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
  model.units = 1;
  model.throughput = 0.0;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
  model.throughput = 1.0;
  model.overhead = -0.1;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
  model.overhead = 0.0;
  CHECK_NOTHROW(model.validate());
}

TEST_CASE("virtual offload completes at exactly the modeled time") {
  VirtualClock clock(1);
  AccelModel model;
  model.throughput = 10000.0;
  model.overhead = 0.001;

  std::vector<std::pair<std::int64_t, std::int64_t>> executed;
  LoopBody body;
  body.accel_operator = [&](std::int64_t b, std::int64_t e) {
    executed.emplace_back(b, e);
  };

  clock.attach(0);
  FcUnit unit(0, model, clock);
  auto handle = unit.offload(make_chunk(0, 128), body, 0);
  // The operator ran inline at submission; completion is still pending.
  CHECK(executed == decltype(executed){{0, 128}});
  CHECK(handle.status() == OffloadStatus::Pending);
  CHECK(handle.submitted_at() == 0.0);
  CHECK(handle.modeled_duration() == 0.001 + 128.0 / 10000.0);

  auto rec = unit.wait(handle, WaitDiscipline::Interrupt, 0);
  CHECK(handle.status() == OffloadStatus::Done);
  CHECK(rec.duration == 0.001 + 128.0 / 10000.0);
  CHECK(rec.consumed_compute_time == 0.0);  // interrupt waits cost nothing
  CHECK(!rec.failed);
  CHECK(!rec.overran_model);
  CHECK(clock.now() == 0.001 + 128.0 / 10000.0);
  clock.retire(0);
}

TEST_CASE("virtual spin waits bill the whole wait as compute") {
  VirtualClock clock(1);
  AccelModel model;
  model.throughput = 100.0;
  clock.attach(0);
  FcUnit unit(0, model, clock);
  auto handle = unit.offload(make_chunk(0, 10), noop_body(), 0);
  auto rec = unit.wait(handle, WaitDiscipline::Spin, 0);
  CHECK(rec.duration == 10.0 / 100.0);
  CHECK(rec.consumed_compute_time == rec.duration);
  clock.retire(0);
}

TEST_CASE("virtual operator failure is reported at completion") {
  VirtualClock clock(1);
  AccelModel model;
  model.throughput = 1000.0;
  LoopBody body;
  body.accel_operator = [](std::int64_t, std::int64_t) {
    throw std::runtime_error("fabric fault");
  };
  clock.attach(0);
  FcUnit unit(0, model, clock);
  auto handle = unit.offload(make_chunk(0, 16), body, 0);
  auto rec = unit.wait(handle, WaitDiscipline::Interrupt, 0);
  CHECK(handle.status() == OffloadStatus::Failed);
  CHECK(rec.failed);
  CHECK(rec.error == "fabric fault");
  // Time still advances to the modeled completion.
  CHECK(clock.now() == 16.0 / 1000.0);
  clock.retire(0);
}

TEST_CASE("a unit can run many offloads back to back") {
  VirtualClock clock(1);
  AccelModel model;
  model.throughput = 1000.0;
  clock.attach(0);
  FcUnit unit(0, model, clock);
  const LoopBody body = noop_body();
  for (int i = 0; i < 50; ++i) {
    auto handle = unit.offload(make_chunk(i * 10, i * 10 + 10), body, 0);
    auto rec = unit.wait(handle, WaitDiscipline::Interrupt, 0);
    CHECK(!rec.failed);
  }
  CHECK(clock.now() == doctest::Approx(50 * 10.0 / 1000.0));
  clock.retire(0);
}

TEST_CASE("offloading to a busy unit or with an empty chunk is rejected") {
  VirtualClock clock(1);
  AccelModel model;
  model.throughput = 1000.0;
  clock.attach(0);
  FcUnit unit(0, model, clock);
  const LoopBody body = noop_body();
  CHECK_THROWS_AS(unit.offload(make_chunk(5, 5), body, 0),
                  std::invalid_argument);
  auto handle = unit.offload(make_chunk(0, 10), body, 0);
  CHECK_THROWS_AS(unit.offload(make_chunk(10, 20), body, 0),
                  std::logic_error);
  unit.wait(handle, WaitDiscipline::Interrupt, 0);
  CHECK_NOTHROW(unit.offload(make_chunk(10, 20), body, 0));
  // Drain so the unit is idle at destruction.
  clock.retire(0);
}

TEST_CASE("interrupt waits require completion notifications") {
  VirtualClock clock(1);
  AccelModel model;
  model.throughput = 1000.0;
  model.completion_irq_enabled = false;
  clock.attach(0);
  FcUnit unit(0, model, clock);
  auto handle = unit.offload(make_chunk(0, 10), noop_body(), 0);
  CHECK_THROWS_AS(unit.wait(handle, WaitDiscipline::Interrupt, 0),
                  std::invalid_argument);
  // Spin works without notifications.
  auto rec = unit.wait(handle, WaitDiscipline::Spin, 0);
  CHECK(!rec.failed);
  clock.retire(0);
}

TEST_CASE("wall-clock offload computes for real and pads to the model") {
  WallClock clock;
  AccelModel model;
  model.throughput = 1000.0;
  model.overhead = 0.0;  // modeled duration: 100/1000 = 0.1 s

  std::atomic<std::int64_t> cells{0};
  LoopBody body;
  body.accel_operator = [&](std::int64_t b, std::int64_t e) {
    cells.fetch_add(e - b);
  };

  FcUnit unit(0, model, clock);
  const double t0 = clock.now();
  auto handle = unit.offload(make_chunk(0, 100), body, -1);
  auto rec = unit.wait(handle, WaitDiscipline::Interrupt, -1);
  const double elapsed = clock.now() - t0;

  CHECK(cells.load() == 100);  // work really happened
  CHECK(!rec.failed);
  CHECK(!rec.overran_model);
  // Padded to at least the modeled time, and not wildly past it.
  CHECK(rec.duration >= 0.1);
  CHECK(rec.duration < 0.2);
  CHECK(elapsed >= 0.1);
}

TEST_CASE("wall-clock overrun reports the real duration and flags it") {
  WallClock clock;
  AccelModel model;
  model.throughput = 1.0e9;  // modeled: effectively instant
  LoopBody body;
  body.accel_operator = [](std::int64_t, std::int64_t) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  };
  FcUnit unit(0, model, clock);
  auto handle = unit.offload(make_chunk(0, 10), body, -1);
  auto rec = unit.wait(handle, WaitDiscipline::Interrupt, -1);
  CHECK(!rec.failed);
  CHECK(rec.overran_model);
  CHECK(rec.duration >= 0.05);
}

TEST_CASE("wall-clock spin waits burn compute and interrupt waits do not") {
  WallClock clock;
  AccelModel model;
  model.throughput = 1000.0;  // modeled: 0.15 s for 150 iterations
  FcUnit unit(0, model, clock);
  const LoopBody body = noop_body();

  auto spin_handle = unit.offload(make_chunk(0, 150), body, -1);
  auto spin_rec = unit.wait(spin_handle, WaitDiscipline::Spin, -1);
  CHECK(!spin_rec.failed);

  auto irq_handle = unit.offload(make_chunk(150, 300), body, -1);
  auto irq_rec = unit.wait(irq_handle, WaitDiscipline::Interrupt, -1);
  CHECK(!irq_rec.failed);

  // Spin consumed most of the wait as CPU time; interrupt almost none.
  CHECK(spin_rec.consumed_compute_time > 0.5 * spin_rec.duration);
  CHECK(irq_rec.consumed_compute_time < 0.2 * irq_rec.duration);
  CHECK(irq_rec.consumed_compute_time < spin_rec.consumed_compute_time);
}

TEST_CASE("wall-clock operator failure completes as Failed") {
  WallClock clock;
  AccelModel model;
  model.throughput = 1000.0;
  LoopBody body;
  body.accel_operator = [](std::int64_t, std::int64_t) {
    throw std::runtime_error("dma error");
  };
  FcUnit unit(0, model, clock);
  auto handle = unit.offload(make_chunk(0, 10), body, -1);
  auto rec = unit.wait(handle, WaitDiscipline::Interrupt, -1);
  CHECK(handle.status() == OffloadStatus::Failed);
  CHECK(rec.failed);
  CHECK(rec.error == "dma error");
}

}  // TEST_SUITE

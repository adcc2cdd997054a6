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
#include <functional>

namespace hetfor {

/// The two operators of a parallel loop body. Both execute iterations
/// [begin, end) with identical semantics: one on a CPU core, one through an
/// accelerator compute unit. Operators must tolerate concurrent invocation
/// on disjoint ranges; the engine guarantees disjointness.
struct LoopBody {
  std::function<void(std::int64_t begin, std::int64_t end)> cpu_operator;
  std::function<void(std::int64_t begin, std::int64_t end)> accel_operator;
};

}  // namespace hetfor

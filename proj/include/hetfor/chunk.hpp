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
#include <string_view>

namespace hetfor {

/// Execution resource classes: CC is one CPU worker core, FC is one
/// accelerator compute unit.
enum class ResourceKind : std::uint8_t { CC, FC };

std::string_view to_string(ResourceKind kind);

/// Half-open sub-range [begin, end) of the loop iteration space, assigned to
/// exactly one resource. Chunks issued over a run are pairwise disjoint and
/// cover the whole space.
struct ChunkDescriptor {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  ResourceKind resource_kind = ResourceKind::CC;
  int resource_id = 0;
  std::uint64_t seq = 0;  // issue order, consecutive from 0

  std::int64_t size() const { return end - begin; }
};

}  // namespace hetfor

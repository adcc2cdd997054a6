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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hetfor/chunk.hpp"

namespace hetfor {

// One executed chunk, as observed by the engine.
//
// The pair (r_before, f_after) is the scheduler state sampled at the moment
// the chunk was claimed: r_before is the number of unclaimed iterations and
// f_after is the speed factor that sized this chunk (i.e. the value in effect
// after all previous timing updates).  Together they make every CC chunk size
// replayable from the trace alone.
struct TraceRecord {
  std::uint64_t seq = 0;            // claim order, 0-based
  ResourceKind resource_kind = ResourceKind::CC;
  int resource_id = 0;              // token id within its kind
  std::int64_t begin = 0;           // first iteration (inclusive)
  std::int64_t end = 0;             // one past last iteration
  std::int64_t size = 0;            // end - begin
  double t_start = 0.0;             // seconds since run start
  double t_end = 0.0;               // seconds since run start
  double duration = 0.0;            // t_end - t_start
  double f_after = 1.0;             // speed factor used to size this chunk
  std::int64_t r_before = 0;        // iterations remaining at claim time

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// Exact header line of the trace CSV format.
inline constexpr std::string_view kTraceCsvHeader =
    "seq,resource_kind,resource_id,begin,end,size,t_start,t_end,duration,"
    "f_after,r_before";

// Serializes records as CSV: the exact header line followed by one row per
// record.  Timestamps and durations are fixed-point decimal seconds with nine
// fractional digits; f_after is printed with enough digits to round-trip the
// exact double.  Throws std::runtime_error if the file cannot be written.
void write_trace(const std::vector<TraceRecord>& records,
                 const std::string& path);
void write_trace(const std::vector<TraceRecord>& records, std::ostream& out);

// Parses a trace CSV produced by write_trace.  Throws std::runtime_error on
// I/O failure, on a bad header, or on a malformed row; row errors name the
// offending row by its line number in the file (the header is row 1).
std::vector<TraceRecord> read_trace(const std::string& path);
std::vector<TraceRecord> read_trace(std::istream& in);

}  // namespace hetfor

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

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "hetfor/trace.hpp"

using hetfor::kTraceCsvHeader;
using hetfor::read_trace;
using hetfor::ResourceKind;
using hetfor::TraceRecord;
using hetfor::write_trace;

namespace {

TraceRecord sample_record() {
  TraceRecord r;
  r.seq = 7;
  r.resource_kind = ResourceKind::FC;
  r.resource_id = 2;
  r.begin = 128;
  r.end = 192;
  r.size = 64;
  r.t_start = 0.25;
  r.t_end = 0.375;
  r.duration = 0.125;
  r.f_after = 4.0;
  r.r_before = 512;
  return r;
}

std::string render(const std::vector<TraceRecord>& records) {
  std::ostringstream out;
  write_trace(records, out);
  return out.str();
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("an empty trace is just the header line") {
  CHECK(render({}) == std::string(kTraceCsvHeader) + "\n");
}

TEST_CASE("records with exactly representable times round-trip unchanged") {
  // All time fields are dyadic rationals, so the fixed 9-decimal rendering
  // is exact and parsing recovers the identical doubles.
  std::vector<TraceRecord> records;
  TraceRecord a = sample_record();
  records.push_back(a);
  TraceRecord b;
  b.seq = 8;
  b.resource_kind = ResourceKind::CC;
  b.resource_id = 0;
  b.begin = 192;
  b.end = 200;
  b.size = 8;
  b.t_start = 0.5;
  b.t_end = 1.0;
  b.duration = 0.5;
  b.f_after = 2.5;
  b.r_before = 448;
  records.push_back(b);

  std::istringstream in(render(records));
  const std::vector<TraceRecord> back = read_trace(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == records[0]);
  CHECK(back[1] == records[1]);
}

TEST_CASE("the speed factor survives the round trip bit for bit") {
  // f is written with 17 significant digits, enough to reconstruct any
  // double exactly — including awkward ones like 8/3.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(1e-3, 1e3);
  std::vector<TraceRecord> records;
  for (std::uint64_t i = 0; i < 50; ++i) {
    TraceRecord r = sample_record();
    r.seq = i;
    r.f_after = (i == 0) ? 8.0 / 3.0 : dist(rng);
    records.push_back(r);
  }
  std::istringstream in(render(records));
  const std::vector<TraceRecord> back = read_trace(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    REQUIRE(back[i].f_after == records[i].f_after);
  }
}

TEST_CASE("write-read-write is a fixpoint") {
  std::vector<TraceRecord> records = {sample_record()};
  const std::string first = render(records);
  std::istringstream in(first);
  const std::string second = render(read_trace(in));
  CHECK(first == second);
}

TEST_CASE("file round trip") {
  const std::string path = "trace_test_roundtrip.csv";
  const std::vector<TraceRecord> records = {sample_record()};
  write_trace(records, path);
  const std::vector<TraceRecord> back = read_trace(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == records[0]);
  std::remove(path.c_str());
}

TEST_CASE("a malformed value names the offending row") {
  // The header is row 1, so the second data row is row 3.
  std::string text(kTraceCsvHeader);
  text += "\n";
  text += "0,CC,0,0,8,8,0.0,0.1,0.1,1.0,100\n";
  text += "1,CC,0,8,16,not-a-number,0.1,0.2,0.1,1.0,92\n";
  std::istringstream in(text);
  try {
    read_trace(in);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& err) {
    const std::string what = err.what();
    CHECK(what.find("row 3") != std::string::npos);
  }
}

TEST_CASE("a wrong header is rejected as row 1") {
  std::istringstream in("seq,kind,id\n");
  try {
    read_trace(in);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& err) {
    const std::string what = err.what();
    CHECK(what.find("row 1") != std::string::npos);
    CHECK(what.find("header") != std::string::npos);
  }
}

TEST_CASE("missing fields and unknown resource kinds are rejected") {
  {
    std::string text(kTraceCsvHeader);
    text += "\n0,CC,0,0,8,8,0.0,0.1\n";  // too few fields
    std::istringstream in(text);
    CHECK_THROWS_AS(read_trace(in), std::runtime_error);
  }
  {
    std::string text(kTraceCsvHeader);
    text += "\n0,GPU,0,0,8,8,0.0,0.1,0.1,1.0,100\n";
    std::istringstream in(text);
    CHECK_THROWS_AS(read_trace(in), std::runtime_error);
  }
  {
    std::string text(kTraceCsvHeader);
    text += "\n0,CC,0,0,8,8,0.0,0.1,0.1,1.0,100,extra\n";
    std::istringstream in(text);
    CHECK_THROWS_AS(read_trace(in), std::runtime_error);
  }
}

TEST_CASE("windows line endings and a trailing newline are tolerated") {
  std::string text(kTraceCsvHeader);
  text += "\r\n0,FC,1,0,64,64,0.0,0.125,0.125,4.0,64\r\n";
  std::istringstream in(text);
  const std::vector<TraceRecord> back = read_trace(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].resource_kind == ResourceKind::FC);
  CHECK(back[0].resource_id == 1);
  CHECK(back[0].duration == 0.125);
}

TEST_CASE("reading a missing file fails loudly") {
  CHECK_THROWS_AS(read_trace("no_such_trace_file.csv"), std::runtime_error);
}

}  // TEST_SUITE

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

#include "hetfor/trace.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetfor {
namespace {

std::string format_row(const TraceRecord& r) {
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "%llu,%s,%d,%lld,%lld,%lld,%.9f,%.9f,%.9f,%.17g,%lld",
                static_cast<unsigned long long>(r.seq),
                to_string(r.resource_kind).data(), r.resource_id,
                static_cast<long long>(r.begin), static_cast<long long>(r.end),
                static_cast<long long>(r.size), r.t_start, r.t_end, r.duration,
                r.f_after, static_cast<long long>(r.r_before));
  return buf;
}

[[noreturn]] void fail_row(std::size_t row, const std::string& why) {
  std::ostringstream msg;
  msg << "trace parse error: row " << row << ": " << why;
  throw std::runtime_error(msg.str());
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

std::int64_t parse_int(const std::string& s, std::size_t row,
                       const char* field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_row(row, std::string("bad integer in column '") + field + "': '" + s +
                      "'");
  }
}

double parse_double(const std::string& s, std::size_t row, const char* field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_row(row,
             std::string("bad number in column '") + field + "': '" + s + "'");
  }
}

ResourceKind parse_kind(const std::string& s, std::size_t row) {
  if (s == "CC") return ResourceKind::CC;
  if (s == "FC") return ResourceKind::FC;
  fail_row(row, "bad resource_kind '" + s + "' (expected CC or FC)");
}

}  // namespace

void write_trace(const std::vector<TraceRecord>& records, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  for (const TraceRecord& r : records) {
    out << format_row(r) << '\n';
  }
}

void write_trace(const std::vector<TraceRecord>& records,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("write_trace: cannot open '" + path +
                             "': " + std::strerror(errno));
  }
  write_trace(records, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write_trace: error writing '" + path + "'");
  }
}

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace parse error: empty file (missing header)");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceCsvHeader) {
    fail_row(1, "bad header '" + line + "'");
  }

  std::vector<TraceRecord> records;
  std::size_t row = 1;  // header consumed
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // tolerate a trailing blank line
    const auto f = split_fields(line);
    if (f.size() != 11) {
      std::ostringstream why;
      why << "expected 11 fields, got " << f.size();
      fail_row(row, why.str());
    }
    TraceRecord r;
    r.seq = static_cast<std::uint64_t>(parse_int(f[0], row, "seq"));
    r.resource_kind = parse_kind(f[1], row);
    r.resource_id = static_cast<int>(parse_int(f[2], row, "resource_id"));
    r.begin = parse_int(f[3], row, "begin");
    r.end = parse_int(f[4], row, "end");
    r.size = parse_int(f[5], row, "size");
    r.t_start = parse_double(f[6], row, "t_start");
    r.t_end = parse_double(f[7], row, "t_end");
    r.duration = parse_double(f[8], row, "duration");
    r.f_after = parse_double(f[9], row, "f_after");
    r.r_before = parse_int(f[10], row, "r_before");
    records.push_back(r);
  }
  return records;
}

std::vector<TraceRecord> read_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_trace: cannot open '" + path +
                             "': " + std::strerror(errno));
  }
  return read_trace(in);
}

}  // namespace hetfor

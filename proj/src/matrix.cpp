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

#include "hetfor/matrix.hpp"

#include <bit>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace hetfor {
namespace {

void check_dims(std::int64_t rows, std::int64_t cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("Matrix dimensions must be >= 1");
  }
  if (rows > std::numeric_limits<std::int64_t>::max() / cols) {
    throw std::invalid_argument("Matrix dimensions overflow");
  }
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return v;
}

void put_f32(std::ostream& out, float f) {
  const std::uint32_t v = std::bit_cast<std::uint32_t>(f);
  unsigned char bytes[4];
  for (int i = 0; i < 4; ++i) {
    bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

float get_f32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  }
  return std::bit_cast<float>(v);
}

}  // namespace

Matrix::Matrix(std::int64_t rows_in, std::int64_t cols_in)
    : rows(rows_in), cols(cols_in) {
  check_dims(rows, cols);
  data.assign(static_cast<std::size_t>(rows * cols), 0.0f);
}

Matrix random_matrix(std::int64_t rows, std::int64_t cols,
                     std::uint32_t seed) {
  Matrix m(rows, cols);
  std::mt19937 rng(seed);
  for (float& x : m.data) {
    // -1 + u/2^31 keeps the mapping exact and platform-independent; the
    // standard distributions have implementation-defined output.
    x = static_cast<float>(-1.0 + static_cast<double>(rng()) / 2147483648.0);
  }
  return m;
}

void save_matrix(const Matrix& m, const std::string& path) {
  check_dims(m.rows, m.cols);
  if (m.data.size() != static_cast<std::size_t>(m.rows * m.cols)) {
    throw std::invalid_argument("save_matrix: data length != rows*cols");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("save_matrix: cannot open '" + path +
                             "': " + std::strerror(errno));
  }
  put_u64(out, static_cast<std::uint64_t>(m.rows));
  put_u64(out, static_cast<std::uint64_t>(m.cols));
  for (float f : m.data) put_f32(out, f);
  out.flush();
  if (!out) {
    throw std::runtime_error("save_matrix: error writing '" + path + "'");
  }
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_matrix: cannot open '" + path +
                             "': " + std::strerror(errno));
  }
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  if (!in) {
    throw std::runtime_error("load_matrix: truncated header in '" + path +
                             "'");
  }
  constexpr std::uint64_t kMax =
      static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  if (rows < 1 || cols < 1 || rows > kMax || cols > kMax) {
    throw std::runtime_error("load_matrix: invalid dimensions in '" + path +
                             "'");
  }
  Matrix m(static_cast<std::int64_t>(rows), static_cast<std::int64_t>(cols));
  for (float& f : m.data) f = get_f32(in);
  if (!in) {
    throw std::runtime_error("load_matrix: truncated data in '" + path + "'");
  }
  return m;
}

}  // namespace hetfor

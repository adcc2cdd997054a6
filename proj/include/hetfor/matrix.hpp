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
#include <string>
#include <vector>

namespace hetfor {

/// Dense row-major matrix of 32-bit floats.
struct Matrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<float> data;  // rows * cols values, row-major

  Matrix() = default;  // empty placeholder; real matrices have dims >= 1

  /// Zero-filled rows x cols matrix. Throws std::invalid_argument unless
  /// both dimensions are >= 1.
  Matrix(std::int64_t rows, std::int64_t cols);

  float& at(std::int64_t r, std::int64_t c) {
    return data[static_cast<std::size_t>(r * cols + c)];
  }
  float at(std::int64_t r, std::int64_t c) const {
    return data[static_cast<std::size_t>(r * cols + c)];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Reproducible random matrix. Entries are drawn from a Mersenne Twister
/// (std::mt19937, standardized output sequence) seeded with `seed`; each raw
/// 32-bit draw u becomes the value -1 + u / 2^31, uniform in [-1, 2^-31).
/// The same (rows, cols, seed) yields identical matrices on any platform.
Matrix random_matrix(std::int64_t rows, std::int64_t cols,
                     std::uint32_t seed);

/// Binary matrix file: rows and cols as little-endian unsigned 64-bit
/// integers, followed by rows*cols little-endian IEEE-754 32-bit floats in
/// row-major order. Throws std::runtime_error on I/O errors; load also
/// throws on truncated or dimension-invalid files.
void save_matrix(const Matrix& m, const std::string& path);
Matrix load_matrix(const std::string& path);

}  // namespace hetfor

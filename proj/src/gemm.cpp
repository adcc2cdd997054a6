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

#include "hetfor/gemm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hetfor {
namespace {

void check_row_range(const GemmProblem& prob, std::int64_t begin,
                     std::int64_t end) {
  if (begin < 0 || end < begin || end > prob.C.rows) {
    throw std::invalid_argument("gemm chunk: row range out of bounds");
  }
}

}  // namespace

GemmProblem::GemmProblem(const Matrix& A_in, const Matrix& B_in, Matrix& C_in,
                         std::int64_t tile_cols_in)
    : A(A_in), B(B_in), C(C_in), tile_cols(tile_cols_in) {
  if (A.rows < 1 || A.cols < 1 || B.rows < 1 || B.cols < 1) {
    throw std::invalid_argument("GemmProblem: matrices must be non-empty");
  }
  if (A.cols != B.rows) {
    throw std::invalid_argument("GemmProblem: A.cols must equal B.rows");
  }
  if (C.rows != A.rows || C.cols != B.cols) {
    throw std::invalid_argument("GemmProblem: C must be A.rows x B.cols");
  }
  if (tile_cols < 1 || tile_cols > B.cols) {
    throw std::invalid_argument(
        "GemmProblem: tile_cols must be in [1, B.cols]");
  }
}

void gemm_cpu_chunk(const GemmProblem& prob, std::int64_t begin,
                    std::int64_t end) {
  check_row_range(prob, begin, end);
  const std::int64_t k_dim = prob.A.cols;
  const std::int64_t p = prob.B.cols;
  for (std::int64_t i = begin; i < end; ++i) {
    float* c_row = &prob.C.data[static_cast<std::size_t>(i * p)];
    std::fill(c_row, c_row + p, 0.0f);
    const float* a_row = &prob.A.data[static_cast<std::size_t>(i * k_dim)];
    for (std::int64_t k = 0; k < k_dim; ++k) {
      const float a = a_row[k];
      const float* b_row = &prob.B.data[static_cast<std::size_t>(k * p)];
      for (std::int64_t j = 0; j < p; ++j) {
        c_row[j] += a * b_row[j];
      }
    }
  }
}

void gemm_accel_chunk(const GemmProblem& prob, std::int64_t begin,
                      std::int64_t end) {
  check_row_range(prob, begin, end);
  const std::int64_t k_dim = prob.A.cols;
  const std::int64_t p = prob.B.cols;
  const std::int64_t tile = prob.tile_cols;

  // The tile buffer stands in for the device's on-chip copy of tile B
  // columns (all k rows of them).
  std::vector<float> b_tile(static_cast<std::size_t>(k_dim * tile));

  for (std::int64_t j0 = 0; j0 < p; j0 += tile) {
    const std::int64_t width = std::min(tile, p - j0);
    for (std::int64_t k = 0; k < k_dim; ++k) {
      const float* b_row = &prob.B.data[static_cast<std::size_t>(k * p + j0)];
      std::copy(b_row, b_row + width,
                &b_tile[static_cast<std::size_t>(k * width)]);
    }
    for (std::int64_t i = begin; i < end; ++i) {
      const float* a_row = &prob.A.data[static_cast<std::size_t>(i * k_dim)];
      float* c_row = &prob.C.data[static_cast<std::size_t>(i * p + j0)];
      for (std::int64_t j = 0; j < width; ++j) {
        float acc = 0.0f;
        for (std::int64_t k = 0; k < k_dim; ++k) {
          acc += a_row[k] * b_tile[static_cast<std::size_t>(k * width + j)];
        }
        c_row[j] = acc;
      }
    }
  }
}

Matrix gemm_reference(const Matrix& A, const Matrix& B) {
  if (A.rows < 1 || A.cols < 1 || B.rows < 1 || B.cols < 1) {
    throw std::invalid_argument("gemm_reference: matrices must be non-empty");
  }
  if (A.cols != B.rows) {
    throw std::invalid_argument("gemm_reference: A.cols must equal B.rows");
  }
  Matrix C(A.rows, B.cols);
  for (std::int64_t i = 0; i < A.rows; ++i) {
    for (std::int64_t j = 0; j < B.cols; ++j) {
      float acc = 0.0f;
      for (std::int64_t k = 0; k < A.cols; ++k) {
        acc += A.at(i, k) * B.at(k, j);
      }
      C.at(i, j) = acc;
    }
  }
  return C;
}

double verify(const Matrix& C, const Matrix& C_ref) {
  if (C.rows != C_ref.rows || C.cols != C_ref.cols) {
    throw std::invalid_argument("verify: shape mismatch");
  }
  double max_diff = 0.0;
  for (std::size_t i = 0; i < C.data.size(); ++i) {
    max_diff = std::max(
        max_diff, std::abs(static_cast<double>(C.data[i]) -
                           static_cast<double>(C_ref.data[i])));
  }
  return max_diff;
}

LoopBody make_gemm_body(const GemmProblem& prob) {
  LoopBody body;
  body.cpu_operator = [prob](std::int64_t begin, std::int64_t end) {
    gemm_cpu_chunk(prob, begin, end);
  };
  body.accel_operator = [prob](std::int64_t begin, std::int64_t end) {
    gemm_accel_chunk(prob, begin, end);
  };
  return body;
}

}  // namespace hetfor

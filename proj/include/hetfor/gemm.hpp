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

#include "hetfor/body.hpp"
#include "hetfor/matrix.hpp"

namespace hetfor {

/// One GEMM run: C = A (m x k) times B (k x p), C is m x p. The loop's
/// iteration space is the rows of C (n = m), so every output element is
/// produced whole by exactly one resource.
///
/// tile_cols is the accelerator operator's B-column block width: the number
/// of B columns buffered per tile (typical device-shaped values: 32 or 128).
///
/// Every route — CPU operator, accelerator operator for any tile_cols, and
/// the reference — accumulates each C element in the same ascending-k order
/// in 32-bit precision, so their outputs are bit-identical and heterogeneous
/// runs verify with a max absolute difference of exactly zero.
struct GemmProblem {
  /// Validates shapes and tile width; throws std::invalid_argument on
  /// mismatch. The matrices must outlive the problem.
  GemmProblem(const Matrix& A, const Matrix& B, Matrix& C,
              std::int64_t tile_cols);

  const Matrix& A;
  const Matrix& B;
  Matrix& C;
  std::int64_t tile_cols;
};

/// Writes C rows [begin, end): row-slab loop ordered i-k-j, accumulating
/// into the output row (ascending k per element).
void gemm_cpu_chunk(const GemmProblem& prob, std::int64_t begin,
                    std::int64_t end);

/// Writes C rows [begin, end) the way the modeled accelerator does: B is
/// consumed in column tiles of width tile_cols; each tile is buffered
/// locally, then the chunk's rows are multiplied against it (ascending k
/// per element). Numerically identical to gemm_cpu_chunk for any tile_cols.
void gemm_accel_chunk(const GemmProblem& prob, std::int64_t begin,
                      std::int64_t end);

/// Ground-truth oracle: sequential naive triple loop (i-j-k, ascending k).
/// Throws std::invalid_argument on dimension mismatch.
Matrix gemm_reference(const Matrix& A, const Matrix& B);

/// Max absolute elementwise difference. Throws std::invalid_argument on
/// shape mismatch. Heterogeneous runs of the kernels above report exactly 0.
double verify(const Matrix& C, const Matrix& C_ref);

/// The GEMM kernels packaged as a LoopBody over C-row indices. The problem's
/// matrices must outlive the returned body.
LoopBody make_gemm_body(const GemmProblem& prob);

}  // namespace hetfor

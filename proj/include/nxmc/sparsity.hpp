// Copyright 2026 The nxmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "nxmc/matrix.hpp"

namespace nxmc {

// N:M pattern: within each contiguous group of n weights along a row, at most
// m may stay nonzero. Groups run along the input (column) dimension.
struct NxmPattern {
  int n = 4;
  int m = 2;
};

void validate_pattern(const NxmPattern& p);  // requires 1 <= m < n

struct Mask {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> on;  // 1 = retained

  Mask() = default;
  Mask(int r, int c) : rows(r), cols(c), on(static_cast<size_t>(r) * c, 0) {}
  uint8_t& at(int r, int c) { return on[static_cast<size_t>(r) * cols + c]; }
  uint8_t at(int r, int c) const { return on[static_cast<size_t>(r) * cols + c]; }
  bool same_shape(const Matrix& w) const { return rows == w.rows && cols == w.cols; }
};

struct SparseProjection {
  Matrix values;
  Mask mask;
};

// Euclidean projection onto the N:M constraint: keeps the m largest-magnitude
// elements of every group, exactly m mask bits per group. Ties resolve to the
// lowest column index. Requires w.cols divisible by p.n.
SparseProjection nxm_project(const Matrix& w, const NxmPattern& p);

// Elementwise select: retained positions keep their value, the rest become 0.
Matrix apply_mask(const Matrix& w, const Mask& mask);

}  // namespace nxmc

// Copyright 2026 The nxmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nxmc/sparsity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nxmc {

void validate_pattern(const NxmPattern& p) {
  if (p.m < 1 || p.m >= p.n)
    throw std::invalid_argument("NxmPattern: requires 1 <= m < n");
}

SparseProjection nxm_project(const Matrix& w, const NxmPattern& p) {
  validate_pattern(p);
  if (w.cols % p.n != 0)
    throw std::invalid_argument("nxm_project: cols not divisible by group length n");

  SparseProjection out{Matrix(w.rows, w.cols), Mask(w.rows, w.cols)};
  std::vector<int> order(static_cast<size_t>(p.n));
  for (int r = 0; r < w.rows; ++r) {
    for (int base = 0; base < w.cols; base += p.n) {
      for (int i = 0; i < p.n; ++i) order[static_cast<size_t>(i)] = i;
      // Magnitude descending; equal magnitudes fall back to the lower index.
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const float ma = std::fabs(w(r, base + a));
        const float mb = std::fabs(w(r, base + b));
        if (ma != mb) return ma > mb;
        return a < b;
      });
      for (int j = 0; j < p.m; ++j) {
        const int c = base + order[static_cast<size_t>(j)];
        out.values(r, c) = w(r, c);
        out.mask.at(r, c) = 1;
      }
    }
  }
  return out;
}

Matrix apply_mask(const Matrix& w, const Mask& mask) {
  if (!mask.same_shape(w)) throw std::invalid_argument("apply_mask: shape mismatch");
  Matrix out(w.rows, w.cols);
  for (size_t i = 0; i < w.data.size(); ++i)
    out.data[i] = mask.on[i] ? w.data[i] : 0.0f;
  return out;
}

}  // namespace nxmc

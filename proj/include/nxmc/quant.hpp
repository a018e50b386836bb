// Copyright 2026 The nxmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nxmc/matrix.hpp"

namespace nxmc {

// Symmetric (zero-offset) b-bit integer quantization. Codes live in
// [-2^(b-1), 2^(b-1)-1]; group_size is the number of consecutive output
// neurons (rows) sharing one scale, 0 meaning the whole matrix.
struct QuantSpec {
  int bits = 8;
  int group_size = 32;
};

void validate_spec(const QuantSpec& spec);  // bits in [2, 30], group_size >= 0

inline int64_t quant_max(int bits) { return (int64_t{1} << (bits - 1)) - 1; }
inline int64_t quant_min(int bits) { return -(int64_t{1} << (bits - 1)); }

// Rounds half away from zero, then clamps into the representable range.
inline int32_t quantize_value(double x, double s, const QuantSpec& spec) {
  if (!(s > 0.0)) throw std::invalid_argument("quantize_value: scale must be positive");
  const double q = std::round(x / s);
  const double lo = static_cast<double>(quant_min(spec.bits));
  const double hi = static_cast<double>(quant_max(spec.bits));
  return static_cast<int32_t>(std::clamp(q, lo, hi));
}

inline double dequantize_value(int32_t code, double s) { return s * code; }

enum class ScaleSolver { kMax, kDist };

// Scale making the largest-magnitude element exactly representable:
// max|group| / (2^(b-1) - 1). Errors on an all-zero group.
double solve_scale_max(std::span<const float> group, const QuantSpec& spec);

// Scale minimizing the squared reconstruction error over the group, found by
// a coarse scan of 2^(b-1)*16 candidates over (0, 2*max|x|] plus one 64-step
// refinement around the best candidate; the max-based scale is also evaluated
// so the result never does worse than solve_scale_max.
double solve_scale_dist(std::span<const float> group, const QuantSpec& spec);

// Sum of squared quantize-dequantize errors at scale s (64-bit throughout).
double group_sq_error(std::span<const float> group, double s, const QuantSpec& spec);

struct QuantizedGroup {
  float scale = 1.0f;
  std::vector<int32_t> codes;
};

struct QuantizedMatrix {
  std::vector<QuantizedGroup> groups;
  Matrix dequantized;
};

// Group-wise quantization over consecutive row groups (last group may be
// smaller). All-zero groups get scale 1.0 and zero codes rather than an
// error. The dequantized output is float(double(scale) * code) elementwise.
QuantizedMatrix quantize_matrix(const Matrix& w, const QuantSpec& spec,
                                ScaleSolver solver);

// Same reconstruction path as quantize_matrix but with externally supplied
// per-group scales (one per row group).
Matrix fake_quantize_with_scales(const Matrix& w, const QuantSpec& spec,
                                 std::span<const float> scales);

// Number of row groups a matrix splits into under this spec.
int num_scale_groups(int rows, int group_size);

// Attempts to explain vals as scale*code with codes in the b-bit range.
// bit_exact additionally demands float(double(scale)*code) == value for every
// element; the tolerant mode (used by constraint checking) allows a relative
// slack of 1e-5 of the group's max magnitude.
struct GridFit {
  bool ok = false;
  float scale = 1.0f;
  std::vector<int32_t> codes;
};
GridFit fit_quant_grid(std::span<const float> vals, int bits, bool bit_exact);

}  // namespace nxmc

// Copyright 2026 The nxmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nxmc/quant.hpp"

#include <cmath>
#include <limits>

namespace nxmc {

namespace {

double max_abs(std::span<const float> group) {
  double m = 0.0;
  for (float v : group) m = std::max(m, std::fabs(static_cast<double>(v)));
  return m;
}

}  // namespace

void validate_spec(const QuantSpec& spec) {
  if (spec.bits < 2 || spec.bits > 30)
    throw std::invalid_argument("QuantSpec: bits must be in [2, 30]");
  if (spec.group_size < 0)
    throw std::invalid_argument("QuantSpec: group_size must be >= 0");
}

double solve_scale_max(std::span<const float> group, const QuantSpec& spec) {
  validate_spec(spec);
  if (group.empty()) throw std::invalid_argument("solve_scale_max: empty group");
  const double m = max_abs(group);
  if (m == 0.0) throw std::invalid_argument("solve_scale_max: all-zero group");
  return m / static_cast<double>(quant_max(spec.bits));
}

double group_sq_error(std::span<const float> group, double s, const QuantSpec& spec) {
  const double lo = static_cast<double>(quant_min(spec.bits));
  const double hi = static_cast<double>(quant_max(spec.bits));
  double acc = 0.0;
  for (float v : group) {
    const double x = static_cast<double>(v);
    const double q = std::clamp(std::round(x / s), lo, hi);
    const double d = s * q - x;
    acc += d * d;
  }
  return acc;
}

double solve_scale_dist(std::span<const float> group, const QuantSpec& spec) {
  validate_spec(spec);
  if (group.empty()) throw std::invalid_argument("solve_scale_dist: empty group");
  const double m = max_abs(group);
  if (m == 0.0) throw std::invalid_argument("solve_scale_dist: all-zero group");

  const int coarse = (1 << (spec.bits - 1)) * 16;
  const double hi = 2.0 * m;
  const double step = hi / coarse;

  double best_s = step;
  double best_err = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= coarse; ++j) {
    const double s = step * j;
    const double err = group_sq_error(group, s, spec);
    if (err < best_err) {
      best_err = err;
      best_s = s;
    }
  }

  const double lo2 = std::max(step * 0.5, best_s - step);
  const double hi2 = std::min(hi, best_s + step);
  for (int i = 0; i <= 64; ++i) {
    const double s = lo2 + (hi2 - lo2) * i / 64.0;
    const double err = group_sq_error(group, s, spec);
    if (err < best_err) {
      best_err = err;
      best_s = s;
    }
  }

  // Seeded candidate: never do worse than the max-based scale.
  const double s_max = m / static_cast<double>(quant_max(spec.bits));
  if (group_sq_error(group, s_max, spec) < best_err) best_s = s_max;
  return best_s;
}

int num_scale_groups(int rows, int group_size) {
  if (group_size <= 0) return 1;
  return (rows + group_size - 1) / group_size;
}

namespace {

QuantizedGroup quantize_rows(std::span<const float> vals, const QuantSpec& spec,
                             ScaleSolver solver) {
  QuantizedGroup g;
  g.codes.assign(vals.size(), 0);
  double m = 0.0;
  for (float v : vals) m = std::max(m, std::fabs(static_cast<double>(v)));
  if (m == 0.0) {
    g.scale = 1.0f;  // sparse projections legitimately produce all-zero groups
    return g;
  }
  const double s = solver == ScaleSolver::kMax ? solve_scale_max(vals, spec)
                                               : solve_scale_dist(vals, spec);
  g.scale = static_cast<float>(s);
  const double sd = static_cast<double>(g.scale);
  for (size_t i = 0; i < vals.size(); ++i)
    g.codes[i] = quantize_value(static_cast<double>(vals[i]), sd, spec);
  return g;
}

}  // namespace

QuantizedMatrix quantize_matrix(const Matrix& w, const QuantSpec& spec,
                                ScaleSolver solver) {
  validate_spec(spec);
  QuantizedMatrix out{{}, Matrix(w.rows, w.cols)};
  const int gs = spec.group_size <= 0 ? w.rows : spec.group_size;
  for (int r0 = 0; r0 < w.rows; r0 += gs) {
    const int r1 = std::min(w.rows, r0 + gs);
    std::span<const float> vals{w.data.data() + static_cast<size_t>(r0) * w.cols,
                                static_cast<size_t>(r1 - r0) * w.cols};
    QuantizedGroup g = quantize_rows(vals, spec, solver);
    const double sd = static_cast<double>(g.scale);
    float* dst = out.dequantized.data.data() + static_cast<size_t>(r0) * w.cols;
    for (size_t i = 0; i < g.codes.size(); ++i)
      dst[i] = static_cast<float>(sd * g.codes[i]);
    out.groups.push_back(std::move(g));
  }
  return out;
}

Matrix fake_quantize_with_scales(const Matrix& w, const QuantSpec& spec,
                                 std::span<const float> scales) {
  validate_spec(spec);
  const int gs = spec.group_size <= 0 ? w.rows : spec.group_size;
  if (scales.size() != static_cast<size_t>(num_scale_groups(w.rows, spec.group_size)))
    throw std::invalid_argument("fake_quantize_with_scales: scale count mismatch");
  Matrix out(w.rows, w.cols);
  size_t group = 0;
  for (int r0 = 0; r0 < w.rows; r0 += gs, ++group) {
    const int r1 = std::min(w.rows, r0 + gs);
    const double sd = static_cast<double>(scales[group]);
    if (!(sd > 0.0))
      throw std::invalid_argument("fake_quantize_with_scales: scale must be positive");
    const size_t begin = static_cast<size_t>(r0) * w.cols;
    const size_t end = static_cast<size_t>(r1) * w.cols;
    for (size_t i = begin; i < end; ++i) {
      const int32_t q = quantize_value(static_cast<double>(w.data[i]), sd, spec);
      out.data[i] = static_cast<float>(sd * q);
    }
  }
  return out;
}

GridFit fit_quant_grid(std::span<const float> vals, int bits, bool bit_exact) {
  GridFit fit;
  fit.codes.assign(vals.size(), 0);

  double m = 0.0;
  for (float v : vals) m = std::max(m, std::fabs(static_cast<double>(v)));
  if (m == 0.0) {
    fit.ok = true;
    fit.scale = 1.0f;
    return fit;
  }

  const int64_t lo = quant_min(bits);
  const int64_t hi = quant_max(bits);
  const int64_t kmax = int64_t{1} << (bits - 1);
  const double tol = bit_exact ? 0.0 : m * 1e-5;

  auto try_scale = [&](float s32) -> bool {
    const double s = static_cast<double>(s32);
    if (!(s > 0.0) || !std::isfinite(s)) return false;
    for (size_t i = 0; i < vals.size(); ++i) {
      const double x = static_cast<double>(vals[i]);
      const double q = std::round(x / s);
      if (q < static_cast<double>(lo) || q > static_cast<double>(hi)) return false;
      if (bit_exact) {
        if (static_cast<float>(s * q) != vals[i]) return false;
      } else {
        if (std::fabs(s * q - x) > tol) return false;
      }
      fit.codes[i] = static_cast<int32_t>(q);
    }
    fit.scale = s32;
    fit.ok = true;
    return true;
  };

  // The max-magnitude element has some code k in [1, 2^(b-1)]; the implied
  // scale is within an ulp of max/k, so probing the neighbours covers the
  // exact case.
  for (int64_t k = 1; k <= kmax; ++k) {
    const float center = static_cast<float>(m / static_cast<double>(k));
    if (try_scale(center)) return fit;
    if (bit_exact) {
      if (try_scale(std::nextafter(center, 0.0f))) return fit;
      if (try_scale(std::nextafter(center, std::numeric_limits<float>::infinity())))
        return fit;
    }
  }
  fit.ok = false;
  return fit;
}

}  // namespace nxmc

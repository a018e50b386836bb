// Copyright 2026 The nxmc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace nxmc {

// Dense row-major matrix. Rows index output neurons, columns input features.
// All elements are expected to stay finite; ops accumulate in 64-bit floats.
template <typename T>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;  // row-major, size rows*cols

  Mat() = default;
  Mat(int r, int c, T fill = T{})
      : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {
    if (r < 1 || c < 1) throw std::invalid_argument("Mat: dims must be >= 1");
  }

  T& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  const T& operator()(int r, int c) const {
    return data[static_cast<size_t>(r) * cols + c];
  }

  std::span<T> row(int r) {
    return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)};
  }
  std::span<const T> row(int r) const {
    return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)};
  }

  size_t size() const { return data.size(); }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }

  template <typename U>
  Mat<U> cast() const {
    Mat<U> out(rows, cols);
    for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
    return out;
  }

  static Mat identity(int n) {
    Mat out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }
};

using Matrix = Mat<float>;

template <typename T>
double frobenius_dist(const Mat<T>& a, const Mat<T>& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("frobenius_dist: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

template <typename T>
double frobenius_norm(const Mat<T>& a) {
  double acc = 0.0;
  for (const T& v : a.data) acc += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(acc);
}

// Standard product; per-element sums run in 64-bit and are rounded once.
template <typename T>
Mat<T> matmul(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dims differ");
  Mat<T> out(a.rows, b.cols);
  std::vector<double> acc(static_cast<size_t>(b.cols));
  for (int i = 0; i < a.rows; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int k = 0; k < a.cols; ++k) {
      const double aik = static_cast<double>(a(i, k));
      const T* brow = b.data.data() + static_cast<size_t>(k) * b.cols;
      for (int j = 0; j < b.cols; ++j) acc[j] += aik * static_cast<double>(brow[j]);
    }
    for (int j = 0; j < b.cols; ++j) out(i, j) = static_cast<T>(acc[j]);
  }
  return out;
}

template <typename T>
Mat<T> transpose(const Mat<T>& a) {
  Mat<T> out(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
  return out;
}

}  // namespace nxmc

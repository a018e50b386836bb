// Copyright 2026 The nxmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "nxmc/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nxmc {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

int Rng::next_int(int n) {
  if (n < 1) throw std::invalid_argument("Rng::next_int: n must be >= 1");
  const uint64_t bound = static_cast<uint64_t>(n);
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    if (static_cast<uint64_t>(m) >= threshold) return static_cast<int>(m >> 64);
  }
}

}  // namespace nxmc

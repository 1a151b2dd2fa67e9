//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace bmc {

/// Seedable random source with portable output.
///
/// The raw stream is std::mt19937_64, whose sequence is fixed by the C++
/// standard, and all derived values (uniform doubles, normals, bounded
/// integers) are produced here from the raw 64-bit words rather than through
/// std::*_distribution, whose results vary between standard libraries. Two
/// builds with the same seed therefore draw identical samples.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the Box-Muller transform (two uniforms per call).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, n) by 128-bit multiply-shift. The bias is at
  /// most n / 2^64, negligible for the index ranges used here.
  std::uint64_t index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bmc

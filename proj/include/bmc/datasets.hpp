//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmc/bounds.hpp"
#include "bmc/errors.hpp"
#include "bmc/io.hpp"
#include "bmc/linalg.hpp"
#include "bmc/rng.hpp"

namespace bmc {

/// Hollowed semi-cylinder sampler parameters. Defaults reproduce the
/// radius-4 benchmark surface with excluded bands in both the angular and
/// axial directions.
struct SemiCylinderSpec {
  Index n = 500;
  double radius = 4.0;
  std::vector<std::pair<double, double>> theta_ranges = {
      {0.0, std::numbers::pi / 3.0},
      {2.0 * std::numbers::pi / 3.0, std::numbers::pi}};
  std::vector<std::pair<double, double>> z_ranges = {{0.0, 3.0},
                                                     {7.0, 10.0}};
  std::uint64_t seed = 0;
};

namespace detail {

/// Uniform draw over a union of intervals, each interval weighted by its
/// length; degenerate unions (total length zero) pick an interval uniformly.
inline double draw_from_union(
    const std::vector<std::pair<double, double>>& ranges, Rng& rng) {
  double total = 0.0;
  for (const auto& [lo, hi] : ranges) total += hi - lo;
  if (total > 0.0) {
    double u = rng.uniform() * total;
    for (const auto& [lo, hi] : ranges) {
      const double len = hi - lo;
      if (u < len) return lo + u;
      u -= len;
    }
    return ranges.back().second;  // u == total after rounding
  }
  return ranges[rng.index(ranges.size())].first;
}

inline void check_ranges(const std::vector<std::pair<double, double>>& ranges,
                         const char* what) {
  if (ranges.empty()) {
    throw std::invalid_argument(std::string("sample_semi_cylinder: empty ") +
                                what + " union");
  }
  for (const auto& [lo, hi] : ranges) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument(std::string("sample_semi_cylinder: bad ") +
                                  what + " interval");
    }
  }
}

}  // namespace detail

/// Samples n points (radius*cos(theta), radius*sin(theta), z) with theta and
/// z independent and uniform over their respective interval unions.
/// Deterministic per seed; theta is drawn before z for each point.
inline PointCloud sample_semi_cylinder(const SemiCylinderSpec& spec) {
  if (spec.n < 0 || spec.radius <= 0.0) {
    throw std::invalid_argument(
        "sample_semi_cylinder: need n >= 0 and radius > 0");
  }
  detail::check_ranges(spec.theta_ranges, "theta");
  detail::check_ranges(spec.z_ranges, "z");
  Rng rng(spec.seed);
  PointCloud cloud;
  cloud.coords.resize(spec.n, 3);
  for (Index i = 0; i < spec.n; ++i) {
    const double theta = detail::draw_from_union(spec.theta_ranges, rng);
    const double z = detail::draw_from_union(spec.z_ranges, rng);
    cloud.coords(i, 0) = spec.radius * std::cos(theta);
    cloud.coords(i, 1) = spec.radius * std::sin(theta);
    cloud.coords(i, 2) = z;
  }
  return cloud;
}

/// k isotropic Gaussian blobs with labels. Centers sit at center_sep times
/// mutually orthonormal directions when k <= dim (pairwise separation
/// center_sep * sqrt(2)); otherwise random placement is retried until all
/// pairwise separations reach center_sep.
inline PointCloud sample_gaussian_clusters(int k, Index n_per, Index dim,
                                           double center_sep, double sigma,
                                           std::uint64_t seed) {
  if (k < 1 || n_per < 0 || dim < 1) {
    throw std::invalid_argument(
        "sample_gaussian_clusters: need k >= 1, n_per >= 0, dim >= 1");
  }
  if (sigma < 0.0 || center_sep < 0.0) {
    throw std::invalid_argument(
        "sample_gaussian_clusters: sigma and center_sep must be nonnegative");
  }
  Rng rng(seed);
  Matrix centers(k, dim);
  if (static_cast<Index>(k) <= dim) {
    Matrix g(dim, k);
    for (Index j = 0; j < k; ++j) {
      for (Index i = 0; i < dim; ++i) g(i, j) = rng.normal();
    }
    const Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix q = qr.householderQ() * Matrix::Identity(dim, k);
    centers = center_sep * q.transpose();
  } else {
    constexpr int kMaxAttempts = 100;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      for (Index c = 0; c < k; ++c) {
        for (Index j = 0; j < dim; ++j) {
          centers(c, j) = 2.0 * center_sep * rng.normal();
        }
      }
      placed = true;
      for (Index a = 0; a < k && placed; ++a) {
        for (Index b = a + 1; b < k; ++b) {
          if ((centers.row(a) - centers.row(b)).norm() < center_sep) {
            placed = false;
            break;
          }
        }
      }
    }
    if (!placed) {
      throw data_error(
          "sample_gaussian_clusters: could not place centers with the "
          "requested separation");
    }
  }
  PointCloud cloud;
  cloud.coords.resize(k * n_per, dim);
  cloud.labels.emplace();
  cloud.labels->reserve(static_cast<std::size_t>(k) *
                        static_cast<std::size_t>(n_per));
  for (int c = 0; c < k; ++c) {
    for (Index i = 0; i < n_per; ++i) {
      for (Index j = 0; j < dim; ++j) {
        cloud.coords(c * n_per + i, j) = centers(c, j) + sigma * rng.normal();
      }
      cloud.labels->push_back(c);
    }
  }
  return cloud;
}

/// Uniform sampling without replacement of per_digit images for each
/// requested digit, concatenated in the digit-list order. Deterministic per
/// seed. Noise is not applied here.
inline PointCloud subsample_by_digit(const IdxImageSet& set,
                                     const std::vector<int>& digits,
                                     Index per_digit, std::uint64_t seed) {
  if (per_digit < 0) {
    throw std::invalid_argument("subsample_by_digit: per_digit must be >= 0");
  }
  Rng rng(seed);
  std::vector<Index> chosen;
  std::vector<int> labels;
  for (int digit : digits) {
    std::vector<Index> pool;
    for (Index i = 0; i < set.count(); ++i) {
      if (set.labels[static_cast<std::size_t>(i)] == digit) pool.push_back(i);
    }
    if (static_cast<Index>(pool.size()) < per_digit) {
      throw data_error("subsample_by_digit: only " +
                       std::to_string(pool.size()) + " instances of digit " +
                       std::to_string(digit) + ", need " +
                       std::to_string(per_digit));
    }
    // Partial Fisher-Yates: the first per_digit slots are the sample.
    for (Index t = 0; t < per_digit; ++t) {
      const Index swap_with =
          t + static_cast<Index>(rng.index(pool.size() - t));
      std::swap(pool[static_cast<std::size_t>(t)],
                pool[static_cast<std::size_t>(swap_with)]);
      chosen.push_back(pool[static_cast<std::size_t>(t)]);
      labels.push_back(digit);
    }
  }
  PointCloud cloud;
  cloud.coords.resize(static_cast<Index>(chosen.size()), set.images.cols());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    cloud.coords.row(static_cast<Index>(i)) = set.images.row(chosen[i]);
  }
  cloud.labels = std::move(labels);
  return cloud;
}

/// Adds iid Gaussian noise of the given standard deviation to every entry.
/// Values are not clipped afterwards.
inline Matrix add_gaussian_noise(const Matrix& m, double stddev,
                                 std::uint64_t seed) {
  if (stddev < 0.0) {
    throw std::invalid_argument("add_gaussian_noise: stddev must be >= 0");
  }
  Rng rng(seed);
  Matrix out = m;
  for (Index i = 0; i < out.rows(); ++i) {
    for (Index j = 0; j < out.cols(); ++j) {
      out(i, j) += stddev * rng.normal();
    }
  }
  return out;
}

}  // namespace bmc

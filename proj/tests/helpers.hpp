//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "bmc/bounds.hpp"
#include "bmc/linalg.hpp"
#include "bmc/rng.hpp"

namespace bmc::test {

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed,
                            double scale = 1.0) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = scale * rng.normal();
  }
  return m;
}

inline Matrix random_symmetric(Index n, std::uint64_t seed,
                               double scale = 1.0) {
  return symmetrized(random_matrix(n, n, seed, scale));
}

inline Matrix random_hollow_symmetric(Index n, std::uint64_t seed,
                                      double scale = 1.0) {
  Matrix m = random_symmetric(n, seed, scale);
  m.diagonal().setZero();
  return m;
}

/// Brute-force squared Euclidean distance matrix straight from coordinates.
inline Matrix brute_force_edm(const Matrix& coords) {
  const Index n = coords.rows();
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      d(i, j) = (coords.row(i) - coords.row(j)).squaredNorm();
    }
  }
  return d;
}

inline double rel_frobenius(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / b.norm();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Fresh scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bmc_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace bmc::test

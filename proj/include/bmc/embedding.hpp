//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <stdexcept>

#include "bmc/linalg.hpp"

namespace bmc {

/// Low-dimensional coordinates extracted from a squared-distance matrix:
/// one row per point, columns ordered by decreasing Gram eigenvalue.
struct Embedding {
  Matrix coords;     ///< n x p
  int p = 0;
  Vector spectrum;   ///< full descending Gram eigenvalue spectrum
};

/// Spectral embedding: eigendecompose Gram(L), clamp negative eigenvalues to
/// zero, and scale the leading p eigenvectors by sqrt(eigenvalue). For a PSD
/// Gramian this coincides with the SVD route since the two factorizations
/// agree on symmetric PSD matrices. Eigenvector signs follow the convention
/// fixed in symmetric_eig, so coordinates are reproducible.
inline Embedding embed(const DistanceMatrix& l, int p) {
  const Index n = l.size();
  if (p < 1 || p > n) {
    throw std::invalid_argument("embed: need 1 <= p <= n");
  }
  const Spectrum es = symmetric_eig(gramian(l).entries);
  const Vector clamped = es.values.cwiseMax(0.0);
  Embedding out;
  out.p = p;
  out.spectrum = es.values;
  out.coords = es.vectors.leftCols(p) *
               clamped.head(p).cwiseSqrt().asDiagonal();
  return out;
}

/// Percentage-normalized spectrum over the top_k leading values:
/// 100 * sigma_j / sum of the top_k values. All zeros when the sum is zero.
inline Vector normalized_sv_percent(const Vector& values, Index top_k) {
  if (top_k < 0 || top_k > values.size()) {
    throw std::invalid_argument(
        "normalized_sv_percent: top_k out of range");
  }
  const Vector head = values.head(top_k);
  const double total = head.sum();
  if (total == 0.0) return Vector::Zero(top_k);
  return 100.0 * head / total;
}

}  // namespace bmc

//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <stdexcept>

#include "bmc/linalg.hpp"

namespace bmc {

/// A shrunk matrix together with its spectrum before and after shrinkage
/// (singular values for sv_shrink, Gram eigenvalues for psd_eig_shrink).
struct ShrinkageResult {
  Matrix matrix;
  Vector spectrum_before;
  Vector spectrum_after;
};

/// Singular-value soft thresholding: U * diag(max(sigma_j - nu, 0)) * V^T.
/// This is the proximal operator of nu * nuclear norm, i.e. it minimizes
/// nu*||L||_* + 1/2*||L - G||_F^2 over L.
inline ShrinkageResult sv_shrink(const Matrix& g, double nu) {
  if (nu < 0.0) {
    throw std::invalid_argument("sv_shrink: nu must be nonnegative");
  }
  const SvdResult s = svd(g);
  ShrinkageResult out;
  out.spectrum_before = s.values;
  out.spectrum_after = (s.values.array() - nu).max(0.0);
  out.matrix =
      s.u * out.spectrum_after.asDiagonal() * s.v.transpose();
  return out;
}

/// Elementwise signed violation of [lower, upper]: K - lower below the
/// interval, K - upper above it, 0 inside (boundary included).
inline Matrix bound_violation(const Matrix& lower, const Matrix& upper,
                              const Matrix& k) {
  Matrix e = Matrix::Zero(k.rows(), k.cols());
  for (Index j = 0; j < k.cols(); ++j) {
    for (Index i = 0; i < k.rows(); ++i) {
      if (k(i, j) < lower(i, j)) {
        e(i, j) = k(i, j) - lower(i, j);
      } else if (k(i, j) > upper(i, j)) {
        e(i, j) = k(i, j) - upper(i, j);
      }
    }
  }
  return e;
}

/// Derivative of bound_violation where it exists: 1 strictly outside the
/// interval, 0 inside and at the boundary (subgradient choice 0).
inline Matrix bound_violation_deriv(const Matrix& lower, const Matrix& upper,
                                    const Matrix& k) {
  Matrix e = Matrix::Zero(k.rows(), k.cols());
  for (Index j = 0; j < k.cols(); ++j) {
    for (Index i = 0; i < k.rows(); ++i) {
      if (k(i, j) < lower(i, j) || k(i, j) > upper(i, j)) e(i, j) = 1.0;
    }
  }
  return e;
}

/// Elementwise exact minimizer of
///   rho_primal/2 * (x - c)^2 + eta * E(x) + rho_bound/2 * E(x)^2
/// with E the signed violation of [lower, upper]. The objective is a
/// continuous piecewise quadratic in x, so the minimum is one of three
/// candidates: the per-piece stationary point clamped into its piece.
inline Matrix bound_penalty_prox(const Matrix& lower, const Matrix& upper,
                                 const Matrix& candidate, const Matrix& eta,
                                 double rho_primal, double rho_bound) {
  if (rho_primal <= 0.0) {
    throw std::invalid_argument("bound_penalty_prox: rho_primal must be > 0");
  }
  if (rho_bound < 0.0) {
    throw std::invalid_argument(
        "bound_penalty_prox: rho_bound must be nonnegative");
  }
  Matrix out(candidate.rows(), candidate.cols());
  const double a = rho_primal;
  const double b = rho_bound;
  for (Index j = 0; j < candidate.cols(); ++j) {
    for (Index i = 0; i < candidate.rows(); ++i) {
      const double c = candidate(i, j);
      const double lo = lower(i, j);
      const double up = upper(i, j);
      const double h = eta(i, j);
      const auto objective = [&](double x) {
        double e = 0.0;
        if (x < lo) {
          e = x - lo;
        } else if (x > up) {
          e = x - up;
        }
        const double dx = x - c;
        return 0.5 * a * dx * dx + h * e + 0.5 * b * e * e;
      };
      const double x_in = std::clamp(c, lo, up);
      const double x_lo = std::min((a * c + b * lo - h) / (a + b), lo);
      const double x_up = std::max((a * c + b * up - h) / (a + b), up);
      double best_x = x_in;
      double best_f = objective(x_in);
      const double f_lo = objective(x_lo);
      if (f_lo < best_f) {
        best_f = f_lo;
        best_x = x_lo;
      }
      const double f_up = objective(x_up);
      if (f_up < best_f) {
        best_x = x_up;
      }
      out(i, j) = best_x;
    }
  }
  return out;
}

/// PSD eigenvalue shrinkage of the Gramian. Double-centers G, shifts every
/// eigenvalue down by nu* = 1/rho_zeta - min(lambda_min, 0) and floors at
/// zero, then reassembles U * diag(lambda*) * U^T. The result is PSD; the
/// shift removes both negative eigenvalues and positive ones below 1/rho.
inline ShrinkageResult psd_eig_shrink(const Matrix& g, double rho_zeta) {
  if (rho_zeta <= 0.0) {
    throw std::invalid_argument("psd_eig_shrink: rho_zeta must be positive");
  }
  const GramMatrix gram = gramian(g);
  const Spectrum es = symmetric_eig(gram.entries);
  const double lambda_min = es.values[es.values.size() - 1];
  const double nu = 1.0 / rho_zeta - std::min(lambda_min, 0.0);
  ShrinkageResult out;
  out.spectrum_before = es.values;
  out.spectrum_after = (es.values.array() - nu).max(0.0);
  out.matrix = es.vectors * out.spectrum_after.asDiagonal() *
               es.vectors.transpose();
  return out;
}

/// The full L-update step: shrink the Gramian of G to PSD, then map back to
/// a squared-distance matrix. Output is symmetric, zero-diagonal,
/// nonnegative, with PSD Gramian.
inline DistanceMatrix psd_distance_step(const Matrix& g, double rho_zeta) {
  const ShrinkageResult shrunk = psd_eig_shrink(g, rho_zeta);
  return DistanceMatrix(gram_to_distance(shrunk.matrix));
}

}  // namespace bmc

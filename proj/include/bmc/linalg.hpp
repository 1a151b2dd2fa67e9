//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "bmc/errors.hpp"

namespace bmc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// (A + A^T) / 2.
inline Matrix symmetrized(const Matrix& a) {
  return (a + a.transpose()) / 2.0;
}

/// Square matrix of squared pairwise distances: symmetric, zero diagonal,
/// nonnegative. The constructor symmetrizes, zeroes the diagonal, and clamps
/// rounding-level negative entries to zero; genuinely negative entries are
/// rejected.
struct DistanceMatrix {
  Matrix entries;

  explicit DistanceMatrix(Matrix m) {
    if (m.rows() != m.cols()) {
      throw std::invalid_argument("DistanceMatrix: matrix must be square");
    }
    entries = symmetrized(m);
    entries.diagonal().setZero();
    const double scale = entries.size() > 0
                             ? entries.cwiseAbs().maxCoeff()
                             : 0.0;
    const double tol = 1e-9 * std::max(1.0, scale);
    for (Index j = 0; j < entries.cols(); ++j) {
      for (Index i = 0; i < entries.rows(); ++i) {
        const double v = entries(i, j);
        if (v < -tol) {
          throw std::invalid_argument(
              "DistanceMatrix: negative entry at (" + std::to_string(i) +
              ", " + std::to_string(j) + "): " + std::to_string(v));
        }
        if (v < 0.0) entries(i, j) = 0.0;
      }
    }
  }

  Index size() const { return entries.rows(); }
};

/// Symmetric inner-product matrix produced by double centering. Rows and
/// columns of a centered matrix sum to zero.
struct GramMatrix {
  Matrix entries;

  explicit GramMatrix(Matrix m) {
    if (m.rows() != m.cols()) {
      throw std::invalid_argument("GramMatrix: matrix must be square");
    }
    entries = symmetrized(m);
  }

  Index size() const { return entries.rows(); }
};

/// Eigen/singular spectrum: values sorted descending, matching unit vectors
/// in the columns of `vectors`.
struct Spectrum {
  Vector values;
  Matrix vectors;
};

/// Full SVD A = u * diag(values) * v^T with values descending.
struct SvdResult {
  Matrix u;
  Vector values;
  Matrix v;
};

namespace detail {

/// Flips each column so its largest-magnitude entry is positive; `also`
/// (when non-null) receives the same flips so factorizations stay valid.
inline void normalize_column_signs(Matrix& m, Matrix* also = nullptr) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index imax = 0;
    double vmax = 0.0;
    for (Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > vmax) {
        vmax = a;
        imax = i;
      }
    }
    if (m.rows() > 0 && m(imax, j) < 0.0) {
      m.col(j) = -m.col(j);
      if (also) also->col(j) = -also->col(j);
    }
  }
}

}  // namespace detail

/// Double centering: -1/2 * J * D~ * J with J = I - (1/n) e e^T, where D~ is
/// the input with its diagonal replaced by zeros. Total on any square matrix;
/// the input is symmetrized first. Output rows and columns sum to zero.
inline GramMatrix gramian(const Matrix& d) {
  if (d.rows() != d.cols()) {
    throw std::invalid_argument("gramian: matrix must be square");
  }
  const Index n = d.rows();
  if (n < 2) {
    throw std::invalid_argument("gramian: need at least 2 points");
  }
  Matrix dt = symmetrized(d);
  dt.diagonal().setZero();
  const Vector mu = dt.rowwise().mean();  // also the column means
  const double grand_mean = dt.mean();
  dt.array().colwise() -= mu.array();
  dt.array().rowwise() -= mu.transpose().array();
  dt.array() += grand_mean;
  dt *= -0.5;
  return GramMatrix(std::move(dt));
}

inline GramMatrix gramian(const DistanceMatrix& d) { return gramian(d.entries); }

/// Inverse of double centering on hollow symmetric matrices:
/// diag(S) e^T + e diag(S)^T - 2 S. Linear and total; the output has an
/// exactly zero diagonal and is nonnegative whenever S is PSD.
inline Matrix gram_to_distance(const Matrix& s) {
  if (s.rows() != s.cols()) {
    throw std::invalid_argument("gram_to_distance: matrix must be square");
  }
  const Matrix sym = symmetrized(s);
  const Vector d = sym.diagonal();
  Matrix out = d.replicate(1, sym.cols());
  out += d.transpose().replicate(sym.rows(), 1);
  out -= 2.0 * sym;
  out.diagonal().setZero();
  return out;
}

inline DistanceMatrix gram_to_distance(const GramMatrix& s) {
  return DistanceMatrix(gram_to_distance(s.entries));
}

/// Eigendecomposition of a symmetric matrix, values descending, eigenvector
/// signs fixed so results are reproducible. The input is symmetrized first.
inline Spectrum symmetric_eig(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("symmetric_eig: matrix must be square");
  }
  if (!a.allFinite()) {
    throw numeric_error("symmetric_eig: non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(a));
  if (es.info() != Eigen::Success) {
    throw numeric_error("symmetric_eig: eigensolver failed to converge");
  }
  Spectrum sp;
  sp.values = es.eigenvalues().reverse();
  sp.vectors = es.eigenvectors().rowwise().reverse();
  detail::normalize_column_signs(sp.vectors);
  return sp;
}

/// Full SVD with descending singular values and the same deterministic sign
/// convention as symmetric_eig (flips applied to matching u/v column pairs).
inline SvdResult svd(const Matrix& a) {
  if (!a.allFinite()) {
    throw numeric_error("svd: non-finite entries");
  }
  Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult r;
  r.u = solver.matrixU();
  r.values = solver.singularValues();
  r.v = solver.matrixV();
  detail::normalize_column_signs(r.u, &r.v);
  return r;
}

/// Number of values exceeding rel_tol times the largest. Expects a
/// descending nonnegative vector; returns 0 when the leading value is 0.
inline Index numerical_rank(const Vector& values, double rel_tol) {
  if (rel_tol <= 0.0) {
    throw std::invalid_argument("numerical_rank: rel_tol must be positive");
  }
  if (values.size() == 0 || values[0] <= 0.0) return 0;
  const double cut = rel_tol * values[0];
  Index count = 0;
  while (count < values.size() && values[count] > cut) ++count;
  return count;
}

}  // namespace bmc

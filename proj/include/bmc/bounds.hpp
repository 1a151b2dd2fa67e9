//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmc/linalg.hpp"

namespace bmc {

/// n points in d ambient dimensions, with optional integer class labels.
struct PointCloud {
  Matrix coords;
  std::optional<std::vector<int>> labels;

  Index n() const { return coords.rows(); }
  Index dim() const { return coords.cols(); }
};

/// Squared pairwise Euclidean distances of a point cloud.
inline Matrix squared_distances(const Matrix& coords) {
  const Vector sq = coords.rowwise().squaredNorm();
  Matrix d = sq.replicate(1, coords.rows());
  d += sq.transpose().replicate(coords.rows(), 1);
  d.noalias() -= 2.0 * coords * coords.transpose();
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return symmetrized(d);
}

/// Sparse list of known manifold distances, one entry per unordered pair.
class ObservedDistances {
 public:
  struct Entry {
    Index i;
    Index j;
    double value;  // manifold distance, not squared
  };

  void add(Index i, Index j, double value) {
    if (i == j) {
      throw std::invalid_argument("ObservedDistances: i and j must differ");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument(
          "ObservedDistances: value must be finite and nonnegative");
    }
    const auto key = std::minmax(i, j);
    if (!pairs_.insert(key).second) {
      throw std::invalid_argument("ObservedDistances: duplicate pair (" +
                                  std::to_string(key.first) + ", " +
                                  std::to_string(key.second) + ")");
    }
    entries_.push_back({i, j, value});
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::set<std::pair<Index, Index>> pairs_;
};

/// Solver input: elementwise lower/upper bounds on the squared distance
/// matrix plus the truncation rank. Upper entries at or above
/// kUnboundedUpper act as "no upper bound".
struct BoundedDistanceProblem {
  Matrix lower;
  Matrix upper;
  int r = 0;

  Index size() const { return lower.rows(); }
};

/// Finite stand-in for an infinite upper bound.
inline constexpr double kUnboundedUpper = 1e18;

enum class BoundViolationKind {
  kShape,      // matrices not square or sizes differ
  kOrder,      // lower > upper
  kAsymmetry,  // |m(i,j) - m(j,i)| > 1e-12
  kDiagonal,   // nonzero diagonal entry
  kNegative,
  kNonFinite,
};

struct BoundViolation {
  BoundViolationKind kind;
  Index i;
  Index j;
};

inline std::string describe(const BoundViolation& v) {
  const std::string at =
      "(" + std::to_string(v.i) + ", " + std::to_string(v.j) + ")";
  switch (v.kind) {
    case BoundViolationKind::kShape:
      return "bound matrices are not square or differ in size";
    case BoundViolationKind::kOrder:
      return "lower > upper at " + at;
    case BoundViolationKind::kAsymmetry:
      return "asymmetric at " + at;
    case BoundViolationKind::kDiagonal:
      return "nonzero diagonal at " + at;
    case BoundViolationKind::kNegative:
      return "negative entry at " + at;
    case BoundViolationKind::kNonFinite:
      return "non-finite entry at " + at;
  }
  return "unknown violation at " + at;
}

/// Diagnostic scan of a problem; an empty result means the problem is valid.
/// Symmetric conditions are reported once per unordered pair.
inline std::vector<BoundViolation> validate(
    const BoundedDistanceProblem& problem) {
  std::vector<BoundViolation> out;
  const Matrix* mats[2] = {&problem.lower, &problem.upper};
  const Index n = problem.lower.rows();
  if (problem.lower.cols() != n || problem.upper.rows() != n ||
      problem.upper.cols() != n) {
    out.push_back({BoundViolationKind::kShape, 0, 0});
    return out;
  }
  for (const Matrix* m : mats) {
    for (Index i = 0; i < n; ++i) {
      if ((*m)(i, i) != 0.0) {
        out.push_back({BoundViolationKind::kDiagonal, i, i});
      }
      for (Index j = i; j < n; ++j) {
        const double v = (*m)(i, j);
        if (!std::isfinite(v)) {
          out.push_back({BoundViolationKind::kNonFinite, i, j});
        } else if (v < 0.0) {
          out.push_back({BoundViolationKind::kNegative, i, j});
        }
        if (j > i && std::abs((*m)(i, j) - (*m)(j, i)) > 1e-12) {
          out.push_back({BoundViolationKind::kAsymmetry, i, j});
        }
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (problem.lower(i, j) > problem.upper(i, j)) {
        out.push_back({BoundViolationKind::kOrder, i, j});
      }
    }
  }
  return out;
}

/// Builds the bound matrices from ambient distances and scaling matrices.
/// Observed pairs take lower = upper = value^2 and win over the scaled
/// bounds; diagonals are forced to zero. Scaling matrices are symmetrized
/// by averaging.
inline BoundedDistanceProblem build_bounds(const PointCloud& cloud,
                                           const Matrix& alpha_l,
                                           const Matrix& alpha_u,
                                           const ObservedDistances& observed,
                                           int r) {
  const Index n = cloud.n();
  if (!cloud.coords.allFinite()) {
    throw std::invalid_argument("build_bounds: non-finite coordinates");
  }
  if (cloud.labels && static_cast<Index>(cloud.labels->size()) != n) {
    throw std::invalid_argument("build_bounds: label count != point count");
  }
  if (alpha_l.rows() != n || alpha_l.cols() != n || alpha_u.rows() != n ||
      alpha_u.cols() != n) {
    throw std::invalid_argument("build_bounds: scaling matrices must be nxn");
  }
  if (r < 0 || (n > 0 && r >= n)) {
    throw std::invalid_argument("build_bounds: need 0 <= r < n");
  }
  const Matrix al = symmetrized(alpha_l);
  const Matrix au = symmetrized(alpha_u);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (!(al(i, j) >= 0.0) || al(i, j) > au(i, j)) {
        throw std::invalid_argument(
            "build_bounds: need 0 <= alpha_l <= alpha_u at (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  const Matrix de = squared_distances(cloud.coords);
  BoundedDistanceProblem problem;
  problem.lower = al.cwiseProduct(de);
  problem.upper = au.cwiseProduct(de);
  problem.r = r;
  for (const auto& e : observed.entries()) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw std::out_of_range("build_bounds: observed index out of range");
    }
    const double sq = e.value * e.value;
    problem.lower(e.i, e.j) = problem.lower(e.j, e.i) = sq;
    problem.upper(e.i, e.j) = problem.upper(e.j, e.i) = sq;
  }
  problem.lower.diagonal().setZero();
  problem.upper.diagonal().setZero();
  return problem;
}

/// Scalar-broadcast form: constant scaling for every pair.
inline BoundedDistanceProblem build_bounds(const PointCloud& cloud,
                                           double alpha_l, double alpha_u,
                                           const ObservedDistances& observed,
                                           int r) {
  const Index n = cloud.n();
  return build_bounds(cloud, Matrix::Constant(n, n, alpha_l),
                      Matrix::Constant(n, n, alpha_u), observed, r);
}

}  // namespace bmc

//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bmc/bounds.hpp"
#include "bmc/linalg.hpp"
#include "bmc/rng.hpp"

namespace bmc {

/// Row-wise k-nearest-neighbor adjacency: entry (i, j) is 1 iff j is one of
/// the k nearest points to i. Directional (not symmetrized); each row sums
/// to exactly k.
struct AdjacencyMatrix {
  Eigen::MatrixXi entries;
  int k = 0;
};

struct ClusteringResult {
  std::vector<int> assignments;
  Matrix centroids;  ///< k x p
  double inertia = 0.0;
};

/// kNN adjacency by Euclidean distance, self excluded, ties broken toward
/// the lower index.
inline AdjacencyMatrix knn_adjacency(const Matrix& points, int k) {
  const Index n = points.rows();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("knn_adjacency: need 1 <= k < n");
  }
  const Matrix d = squared_distances(points);
  AdjacencyMatrix adj;
  adj.k = k;
  adj.entries = Eigen::MatrixXi::Zero(n, n);
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (d(i, a) != d(i, b)) return d(i, a) < d(i, b);
      return a < b;
    });
    int placed = 0;
    for (Index idx : order) {
      if (idx == i) continue;
      adj.entries(i, idx) = 1;
      if (++placed == k) break;
    }
  }
  return adj;
}

/// Neighborhood preserving error: 100 / (k (n-1)) times the cumulative
/// absolute difference between two adjacency matrices.
inline double neighborhood_error(const AdjacencyMatrix& cloud_adj,
                                 const AdjacencyMatrix& embed_adj) {
  if (cloud_adj.entries.rows() != embed_adj.entries.rows() ||
      cloud_adj.k != embed_adj.k) {
    throw std::invalid_argument(
        "neighborhood_error: adjacency size or k mismatch");
  }
  const Index n = cloud_adj.entries.rows();
  if (n < 2) {
    throw std::invalid_argument("neighborhood_error: need at least 2 points");
  }
  const double diff =
      (cloud_adj.entries - embed_adj.entries).cwiseAbs().sum();
  return 100.0 * diff / (static_cast<double>(cloud_adj.k) * (n - 1));
}

namespace detail {

/// One k-means++ seeded Lloyd run.
inline ClusteringResult lloyd_once(const Matrix& points, int k, Rng& rng) {
  const Index n = points.rows();
  const Index p = points.cols();
  Matrix centroids(k, p);
  centroids.row(0) = points.row(static_cast<Index>(rng.index(n)));
  Vector d2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    for (Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centroids.row(c - 1))
                                  .squaredNorm());
    }
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (Index i = 0; i < n; ++i) {
        u -= d2[i];
        if (u <= 0.0) {
          pick = i;
          break;
        }
        pick = i;
      }
    } else {
      pick = static_cast<Index>(rng.index(n));
    }
    centroids.row(c) = points.row(pick);
  }

  std::vector<int> assign(n, 0);
  double inertia = 0.0;
  double prev_inertia = std::numeric_limits<double>::infinity();
  bool reseeded = false;
  for (int pass = 0; pass < 200; ++pass) {
    bool changed = false;
    inertia = 0.0;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double dc = (points.row(i) - centroids.row(c)).squaredNorm();
        if (dc < best_d) {
          best_d = dc;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
      inertia += best_d;
    }
    // Monotone except right after an empty-cluster reseed.
    assert(reseeded || inertia <= prev_inertia * (1.0 + 1e-12) + 1e-12);
    prev_inertia = inertia;
    if (!changed && pass > 0) break;
    reseeded = false;
    Matrix sums = Matrix::Zero(k, p);
    std::vector<Index> counts(k, 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(assign[i]) += points.row(i);
      ++counts[assign[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
      } else {
        // Re-seed an empty cluster at the point farthest from its centroid.
        Index far = 0;
        double far_d = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double dd =
              (points.row(i) - centroids.row(assign[i])).squaredNorm();
          if (dd > far_d) {
            far_d = dd;
            far = i;
          }
        }
        centroids.row(c) = points.row(far);
        reseeded = true;
      }
    }
  }
  return ClusteringResult{std::move(assign), std::move(centroids), inertia};
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding; returns the lowest-inertia
/// result over `restarts` runs. Deterministic for a fixed seed (restart
/// seeds are derived from it).
inline ClusteringResult kmeans(const Matrix& points, int k, int restarts,
                               std::uint64_t seed) {
  const Index n = points.rows();
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeans: need 1 <= k <= n");
  }
  if (restarts < 1) {
    throw std::invalid_argument("kmeans: restarts must be positive");
  }
  ClusteringResult best;
  bool have = false;
  for (int rs = 0; rs < restarts; ++rs) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(rs));
    ClusteringResult r = detail::lloyd_once(points, k, rng);
    if (!have || r.inertia < best.inertia) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

/// Misclustering percentage under the best bijection between cluster ids and
/// label ids (brute force over permutations; at most 8 distinct ids per
/// side). Invariant to relabeling of either argument.
inline double clustering_error(const std::vector<int>& assignments,
                               const std::vector<int>& labels) {
  if (assignments.size() != labels.size()) {
    throw std::invalid_argument("clustering_error: length mismatch");
  }
  const std::size_t n = assignments.size();
  if (n == 0) return 0.0;
  auto distinct = [](const std::vector<int>& v) {
    std::vector<int> ids(v);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  };
  const std::vector<int> aid = distinct(assignments);
  const std::vector<int> lid = distinct(labels);
  if (aid.size() > 8 || lid.size() > 8) {
    throw std::invalid_argument(
        "clustering_error: more than 8 distinct classes is unsupported");
  }
  const int k = static_cast<int>(std::max(aid.size(), lid.size()));
  auto rank_of = [](const std::vector<int>& ids, int v) {
    return static_cast<int>(
        std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  Eigen::MatrixXi confusion = Eigen::MatrixXi::Zero(k, k);
  for (std::size_t i = 0; i < n; ++i) {
    confusion(rank_of(aid, assignments[i]), rank_of(lid, labels[i])) += 1;
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int matched = 0;
    for (int c = 0; c < k; ++c) matched += confusion(c, perm[c]);
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 100.0 * static_cast<double>(n - best) / static_cast<double>(n);
}

}  // namespace bmc

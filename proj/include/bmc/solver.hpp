//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmc/bounds.hpp"
#include "bmc/linalg.hpp"
#include "bmc/shrinkage.hpp"

namespace bmc {

/// Penalty parameters stop growing here; unchecked geometric growth would
/// eventually overflow the elementwise updates.
inline constexpr double kPenaltyCap = 1e12;

struct SolverConfig {
  int r = 4;
  double rho_zeta_init = 0.05;
  double rho_eta_init = 0.05;
  double rho_growth = 1.01;
  int max_iters = 500;
  double rel_residual_tol = 0.0;  ///< 0 disables early stopping
  double init_mix = 0.8;          ///< weight on the lower bound in the start point
  int record_every = 1;           ///< residual sampling stride
};

struct SolverState {
  Matrix L;
  Matrix K;
  Matrix zeta;
  Matrix eta;
  double rho_zeta = 0.0;
  double rho_eta = 0.0;
  int iter = 1;
};

struct ResidualSample {
  int iter;
  double primal;         ///< ||L - K||_F / max(||K||_F, 1)
  double max_violation;  ///< max |E(K)|
};

/// Final solver output: the recovered squared-distance matrix, the
/// eigen-spectrum of its Gramian, and sampled convergence diagnostics.
struct Recovery {
  DistanceMatrix L;
  Spectrum spectrum;  ///< eigenvalues/vectors of Gram(L), descending
  std::vector<ResidualSample> residual_history;
  int iters_run = 0;
  SolverConfig config_echo;
};

namespace detail {

inline void require_finite(const Matrix& m, int iter, const char* name) {
  if (!m.allFinite()) {
    throw numeric_error(std::string("solver diverged: non-finite ") + name +
                        " at iteration " + std::to_string(iter));
  }
}

inline void check_config(const SolverConfig& c, Index n) {
  if (c.r < 0 || c.r >= n) {
    throw std::invalid_argument("solver: need 0 <= r < n");
  }
  if (c.rho_zeta_init <= 0.0 || c.rho_eta_init <= 0.0) {
    throw std::invalid_argument("solver: initial penalties must be positive");
  }
  if (c.rho_growth < 1.0) {
    throw std::invalid_argument("solver: rho_growth must be >= 1");
  }
  if (c.max_iters < 1) {
    throw std::invalid_argument("solver: max_iters must be positive");
  }
  if (c.rel_residual_tol < 0.0) {
    throw std::invalid_argument("solver: tolerance must be nonnegative");
  }
  if (c.init_mix < 0.0 || c.init_mix > 1.0) {
    throw std::invalid_argument("solver: init_mix must be in [0, 1]");
  }
  if (c.record_every < 1) {
    throw std::invalid_argument("solver: record_every must be positive");
  }
}

}  // namespace detail

/// Upper bounds with unbounded sentinels replaced by lower + the median
/// finite gap, so that mixing lower and upper for the start point never
/// injects sentinel-sized values.
inline Matrix capped_upper_bounds(const BoundedDistanceProblem& problem) {
  const Index n = problem.size();
  std::vector<double> gaps;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (problem.upper(i, j) < kUnboundedUpper) {
        gaps.push_back(problem.upper(i, j) - problem.lower(i, j));
      }
    }
  }
  double median_gap = 0.0;
  if (!gaps.empty()) {
    const std::size_t mid = gaps.size() / 2;
    std::nth_element(gaps.begin(), gaps.begin() + mid, gaps.end());
    median_gap = gaps[mid];
  }
  Matrix capped = problem.upper;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (capped(i, j) >= kUnboundedUpper) {
        capped(i, j) = problem.lower(i, j) + median_gap;
      }
    }
  }
  return capped;
}

/// Start point: L = K = zeta = eta = mix*lower + (1-mix)*capped upper,
/// penalties at their configured initial values.
inline SolverState init_state(const BoundedDistanceProblem& problem,
                              const SolverConfig& config) {
  detail::check_config(config, problem.size());
  if (!validate(problem).empty()) {
    throw data_error("init_state: problem fails validation");
  }
  const Matrix init = config.init_mix * problem.lower +
                      (1.0 - config.init_mix) * capped_upper_bounds(problem);
  SolverState s;
  s.L = init;
  s.K = init;
  s.zeta = init;
  s.eta = init;
  s.rho_zeta = config.rho_zeta_init;
  s.rho_eta = config.rho_eta_init;
  s.iter = 1;
  return s;
}

/// L-update: PSD distance step applied to K - zeta/rho_zeta.
inline DistanceMatrix update_L(const SolverState& s) {
  const Matrix g = s.K - s.zeta / s.rho_zeta;
  return psd_distance_step(g, s.rho_zeta);
}

/// Gradient of tr(U_r K V_r^T) with respect to K, where U_r and V_r hold the
/// top-r left/right singular vectors of L as rows: the n x n matrix
/// U_r^T V_r. Zero when r = 0.
inline Matrix truncated_norm_gradient(const Matrix& l, int r) {
  if (r <= 0) return Matrix::Zero(l.rows(), l.cols());
  const SvdResult s = svd(l);
  return s.u.leftCols(r) * s.v.leftCols(r).transpose();
}

/// K-update: exact minimizer of the K-subproblem
///   rho_zeta/2 * ||(L - K) + (W + zeta)/rho_zeta||_F^2
///     + <eta, E(K)> + rho_eta/2 * ||E(K)||_F^2
/// solved elementwise around the unconstrained candidate
/// c = L + (W + zeta)/rho_zeta, with W the truncated-norm gradient of L.
inline Matrix update_K(const SolverState& s, const Matrix& l_new,
                       const BoundedDistanceProblem& problem) {
  const Matrix w = truncated_norm_gradient(l_new, problem.r);
  const Matrix candidate = l_new + (w + s.zeta) / s.rho_zeta;
  return bound_penalty_prox(problem.lower, problem.upper, candidate, s.eta,
                            s.rho_zeta, s.rho_eta);
}

/// Multiplier ascent: zeta tracks the split residual, eta the violation of
/// the bounds at the new K.
inline void update_multipliers(SolverState& s, const Matrix& l_new,
                               const Matrix& k_new, const Matrix& e_new) {
  s.zeta += s.rho_zeta * (l_new - k_new);
  s.eta += s.rho_eta * e_new;
}

/// Geometric penalty growth, capped at kPenaltyCap.
inline void update_penalties(SolverState& s, const SolverConfig& config) {
  s.rho_zeta = std::min(s.rho_zeta * config.rho_growth, kPenaltyCap);
  s.rho_eta = std::min(s.rho_eta * config.rho_growth, kPenaltyCap);
}

/// Runs the full alternating scheme: L-update, K-update, multiplier ascent,
/// penalty growth, for max_iters iterations or until both the primal
/// residual and the bound violation pass the early-stop test (when enabled).
inline Recovery solve(const BoundedDistanceProblem& problem,
                      const SolverConfig& config) {
  SolverState s = init_state(problem, config);
  const double violation_scale =
      std::max(1.0, capped_upper_bounds(problem).mean());

  std::vector<ResidualSample> history;
  int iters_run = 0;
  for (int m = 1; m <= config.max_iters; ++m) {
    s.iter = m;
    const DistanceMatrix l_new = update_L(s);
    const Matrix k_new = update_K(s, l_new.entries, problem);
    const Matrix e_new = bound_violation(problem.lower, problem.upper, k_new);
    update_multipliers(s, l_new.entries, k_new, e_new);
    s.L = l_new.entries;
    s.K = k_new;

    detail::require_finite(s.L, m, "L");
    detail::require_finite(s.K, m, "K");
    detail::require_finite(s.zeta, m, "zeta");
    detail::require_finite(s.eta, m, "eta");
#ifndef NDEBUG
    {
      assert(((s.L - s.L.transpose()).cwiseAbs().maxCoeff() == 0.0));
      assert(s.L.diagonal().cwiseAbs().maxCoeff() == 0.0);
      assert(s.L.minCoeff() >= 0.0);
      const Vector ev = symmetric_eig(gramian(s.L).entries).values;
      assert(ev[ev.size() - 1] >=
             -1e-10 * std::max(1.0, std::abs(ev[0])));
    }
#endif

    const double primal =
        (s.L - s.K).norm() / std::max(s.K.norm(), 1.0);
    const double max_violation =
        e_new.size() > 0 ? e_new.cwiseAbs().maxCoeff() : 0.0;
    iters_run = m;
    if ((m - 1) % config.record_every == 0 || m == config.max_iters) {
      history.push_back({m, primal, max_violation});
    }

    const bool converged =
        config.rel_residual_tol > 0.0 &&
        primal < config.rel_residual_tol &&
        max_violation < config.rel_residual_tol * violation_scale;
    if (converged) {
      if (history.empty() || history.back().iter != m) {
        history.push_back({m, primal, max_violation});
      }
      break;
    }
    update_penalties(s, config);
  }

  DistanceMatrix l_final(s.L);
  Spectrum spectrum = symmetric_eig(gramian(l_final).entries);
  return Recovery{std::move(l_final), std::move(spectrum), std::move(history),
                  iters_run, config};
}

}  // namespace bmc

//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <stdexcept>
#include <string>

namespace bmc {

/// Malformed or inconsistent input data (file formats, infeasible bounds,
/// mismatched shapes discovered at run time).
struct data_error : std::runtime_error {
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: divergent iterates, non-finite values, or a failed
/// decomposition.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bmc

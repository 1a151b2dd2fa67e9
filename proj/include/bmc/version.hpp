//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

namespace bmc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bmc

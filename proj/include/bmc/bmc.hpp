//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header: recovery of low-rank squared-distance matrices from
// elementwise bounds, spectral embedding, and embedding-quality metrics.
#pragma once

#include "bmc/bounds.hpp"
#include "bmc/datasets.hpp"
#include "bmc/embedding.hpp"
#include "bmc/errors.hpp"
#include "bmc/io.hpp"
#include "bmc/linalg.hpp"
#include "bmc/metrics.hpp"
#include "bmc/rng.hpp"
#include "bmc/shrinkage.hpp"
#include "bmc/solver.hpp"
#include "bmc/version.hpp"

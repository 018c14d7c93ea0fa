// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "voxsr/geometry.hpp"

namespace voxsr {

// Mean squared Euclidean distance from each point of `a` to its nearest
// point in `b`. Distances are exact integers accumulated in 128-bit, so the
// result is independent of evaluation order.
double directional_mse(const VoxelCloud& a, const VoxelCloud& b);

// Point-to-point geometry PSNR: 10*log10(3*peak^2 / mse) with the symmetric
// mse = max(directional_mse(a, b), directional_mse(b, a)). Identical clouds
// yield +infinity.
double d1_psnr(const VoxelCloud& a, const VoxelCloud& b, std::int64_t peak);

// Conventional peak for a cloud pair: 2^depth - 1 of the deeper cloud.
std::int64_t default_peak(const VoxelCloud& a, const VoxelCloud& b);

}  // namespace voxsr

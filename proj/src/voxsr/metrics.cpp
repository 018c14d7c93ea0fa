// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "voxsr/error.hpp"
#include "voxsr/nn_grid.hpp"

namespace voxsr {

double directional_mse(const VoxelCloud& a, const VoxelCloud& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kEmptyCloud, "mse over an empty cloud");
  const NeighborGrid grid(b);
  unsigned __int128 sum = 0;
  for (const Vec3i& p : a.points())
    sum += static_cast<unsigned __int128>(grid.nearest_squared_distance(p));
  return static_cast<double>(sum) / static_cast<double>(a.size());
}

double d1_psnr(const VoxelCloud& a, const VoxelCloud& b, std::int64_t peak) {
  if (peak < 1) fail(ErrorCode::kInvalidArgument, "peak must be >= 1");
  const double mse = std::max(directional_mse(a, b), directional_mse(b, a));
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  const double p = static_cast<double>(peak);
  return 10.0 * std::log10(3.0 * p * p / mse);
}

std::int64_t default_peak(const VoxelCloud& a, const VoxelCloud& b) {
  return (std::int64_t{1} << std::max(a.depth(), b.depth())) - 1;
}

}  // namespace voxsr

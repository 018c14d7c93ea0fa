// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/nn_grid.hpp"

#include <algorithm>
#include <limits>

#include "voxsr/error.hpp"

namespace voxsr {

NeighborGrid::NeighborGrid(const VoxelCloud& cloud, int cell_bits) : cell_bits_(cell_bits) {
  if (cloud.empty()) fail(ErrorCode::kEmptyCloud, "nearest-neighbour target is empty");
  if (cell_bits_ < 0 || cell_bits_ > 12)
    fail(ErrorCode::kInvalidArgument, "cell_bits out of range");
  cell_min_ = {std::numeric_limits<std::int32_t>::max(),
               std::numeric_limits<std::int32_t>::max(),
               std::numeric_limits<std::int32_t>::max()};
  cell_max_ = {std::numeric_limits<std::int32_t>::min(),
               std::numeric_limits<std::int32_t>::min(),
               std::numeric_limits<std::int32_t>::min()};
  for (const Vec3i& p : cloud.points()) {
    const std::int32_t cx = p.x >> cell_bits_;
    const std::int32_t cy = p.y >> cell_bits_;
    const std::int32_t cz = p.z >> cell_bits_;
    cell_min_ = {std::min(cell_min_.x, cx), std::min(cell_min_.y, cy), std::min(cell_min_.z, cz)};
    cell_max_ = {std::max(cell_max_.x, cx), std::max(cell_max_.y, cy), std::max(cell_max_.z, cz)};
    cells_[key(cx, cy, cz)].push_back(p);
  }
}

void NeighborGrid::scan_cell(std::int32_t cx, std::int32_t cy, std::int32_t cz,
                             const Vec3i& query, std::int64_t& best) const {
  if (cx < cell_min_.x || cx > cell_max_.x || cy < cell_min_.y || cy > cell_max_.y ||
      cz < cell_min_.z || cz > cell_max_.z)
    return;
  const auto it = cells_.find(key(cx, cy, cz));
  if (it == cells_.end()) return;
  for (const Vec3i& p : it->second) {
    const std::int64_t dx = std::int64_t{p.x} - query.x;
    const std::int64_t dy = std::int64_t{p.y} - query.y;
    const std::int64_t dz = std::int64_t{p.z} - query.z;
    best = std::min(best, dx * dx + dy * dy + dz * dz);
  }
}

std::int64_t NeighborGrid::nearest_squared_distance(const Vec3i& query) const {
  const std::int32_t qx = query.x >> cell_bits_;
  const std::int32_t qy = query.y >> cell_bits_;
  const std::int32_t qz = query.z >> cell_bits_;

  std::int32_t max_ring = 0;
  max_ring = std::max(max_ring, std::max(qx - cell_min_.x, cell_max_.x - qx));
  max_ring = std::max(max_ring, std::max(qy - cell_min_.y, cell_max_.y - qy));
  max_ring = std::max(max_ring, std::max(qz - cell_min_.z, cell_max_.z - qz));

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::int64_t cell = std::int64_t{1} << cell_bits_;

  for (std::int32_t ring = 0; ring <= max_ring; ++ring) {
    if (best != std::numeric_limits<std::int64_t>::max() && ring >= 1) {
      // any point in a cell `ring` rings away is at least (ring-1)*cell + 1 off
      const std::int64_t floor_dist = (ring - 1) * cell + 1;
      if (floor_dist * floor_dist >= best) break;
    }
    if (ring == 0) {
      scan_cell(qx, qy, qz, query, best);
      continue;
    }
    for (std::int32_t dx = -ring; dx <= ring; ++dx)
      for (std::int32_t dy = -ring; dy <= ring; ++dy) {
        scan_cell(qx + dx, qy + dy, qz - ring, query, best);
        scan_cell(qx + dx, qy + dy, qz + ring, query, best);
      }
    for (std::int32_t dz = -ring + 1; dz <= ring - 1; ++dz) {
      for (std::int32_t dx = -ring; dx <= ring; ++dx) {
        scan_cell(qx + dx, qy - ring, qz + dz, query, best);
        scan_cell(qx + dx, qy + ring, qz + dz, query, best);
      }
      for (std::int32_t dy = -ring + 1; dy <= ring - 1; ++dy) {
        scan_cell(qx - ring, qy + dy, qz + dz, query, best);
        scan_cell(qx + ring, qy + dy, qz + dz, query, best);
      }
    }
  }
  return best;
}

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "voxsr/geometry.hpp"

namespace voxsr {

// Exact nearest-neighbour queries over an immutable cloud, bucketed on a
// uniform grid of 2^cell_bits cells and searched by expanding Chebyshev
// rings. Results are exact integer squared distances, so they match a
// brute-force scan bit for bit.
class NeighborGrid {
 public:
  explicit NeighborGrid(const VoxelCloud& cloud, int cell_bits = 2);

  std::int64_t nearest_squared_distance(const Vec3i& query) const;

 private:
  // 21 bits per axis; wider cell coordinates alias, which only adds
  // distance-checked candidates to a bucket and never changes the minimum
  std::uint64_t key(std::int32_t cx, std::int32_t cy, std::int32_t cz) const {
    const auto pack = [](std::int32_t c) {
      return static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) & 0x1fffff;
    };
    return (pack(cx) << 42) | (pack(cy) << 21) | pack(cz);
  }
  void scan_cell(std::int32_t cx, std::int32_t cy, std::int32_t cz, const Vec3i& query,
                 std::int64_t& best) const;

  int cell_bits_;
  Vec3i cell_min_;
  Vec3i cell_max_;
  std::unordered_map<std::uint64_t, std::vector<Vec3i>> cells_;
};

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic synthetic clouds for tests: random sets, lattices, filled
// solids and thin closed surfaces (the "solid" category of voxelized
// clouds).

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "voxsr/geometry.hpp"

namespace voxsr::testing {

inline VoxelCloud random_cloud(std::mt19937_64& rng, std::size_t count, int depth) {
  std::uniform_int_distribution<std::int32_t> dist(0, (1 << depth) - 1);
  std::vector<Vec3i> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back({dist(rng), dist(rng), dist(rng)});
  return VoxelCloud::from_points(std::move(pts), depth);
}

inline VoxelCloud filled_cube(int side, Vec3i origin = {0, 0, 0}) {
  std::vector<Vec3i> pts;
  pts.reserve(static_cast<std::size_t>(side) * side * side);
  for (int x = 0; x < side; ++x)
    for (int y = 0; y < side; ++y)
      for (int z = 0; z < side; ++z)
        pts.push_back({origin.x + x, origin.y + y, origin.z + z});
  return VoxelCloud::from_points(std::move(pts));
}

// hollow axis-aligned cube: the one-voxel-thick surface of [0, side-1]^3
inline VoxelCloud cube_shell(int side, Vec3i origin = {0, 0, 0}) {
  std::vector<Vec3i> pts;
  for (int x = 0; x < side; ++x)
    for (int y = 0; y < side; ++y)
      for (int z = 0; z < side; ++z)
        if (x == 0 || y == 0 || z == 0 || x == side - 1 || y == side - 1 || z == side - 1)
          pts.push_back({origin.x + x, origin.y + y, origin.z + z});
  return VoxelCloud::from_points(std::move(pts));
}

// thin spherical shell: voxels with |v - c| in [r - 1/2, r + 1/2)
inline VoxelCloud sphere_shell(Vec3i center, int radius, int depth) {
  std::vector<Vec3i> pts;
  const std::int64_t lo4 = std::int64_t{2 * radius - 1} * (2 * radius - 1);
  const std::int64_t hi4 = std::int64_t{2 * radius + 1} * (2 * radius + 1);
  for (int x = center.x - radius - 1; x <= center.x + radius + 1; ++x)
    for (int y = center.y - radius - 1; y <= center.y + radius + 1; ++y)
      for (int z = center.z - radius - 1; z <= center.z + radius + 1; ++z) {
        const std::int64_t dx = x - center.x, dy = y - center.y, dz = z - center.z;
        const std::int64_t d4 = 4 * (dx * dx + dy * dy + dz * dz);
        if (d4 >= lo4 && d4 < hi4) pts.push_back({x, y, z});
      }
  return VoxelCloud::from_points(std::move(pts), depth);
}

// thin torus shell around the z axis: ((rho - ring)^2 + z^2)^(1/2) ~ tube
inline VoxelCloud torus_shell(Vec3i center, int ring_radius, int tube_radius, int depth) {
  std::vector<Vec3i> pts;
  const int extent = ring_radius + tube_radius + 1;
  const double lo = (tube_radius - 0.5) * (tube_radius - 0.5);
  const double hi = (tube_radius + 0.5) * (tube_radius + 0.5);
  for (int x = center.x - extent; x <= center.x + extent; ++x)
    for (int y = center.y - extent; y <= center.y + extent; ++y) {
      const double dx = x - center.x, dy = y - center.y;
      const double rho = std::sqrt(dx * dx + dy * dy) - ring_radius;
      for (int z = center.z - tube_radius - 1; z <= center.z + tube_radius + 1; ++z) {
        const double dz = z - center.z;
        const double d2 = rho * rho + dz * dz;
        if (d2 >= lo && d2 < hi) pts.push_back({x, y, z});
      }
    }
  return VoxelCloud::from_points(std::move(pts), depth);
}

// regular lattice with the given spacing, points^3 sites from the origin
inline VoxelCloud lattice(int points_per_axis, int spacing, int depth) {
  std::vector<Vec3i> pts;
  for (int x = 0; x < points_per_axis; ++x)
    for (int y = 0; y < points_per_axis; ++y)
      for (int z = 0; z < points_per_axis; ++z)
        pts.push_back({x * spacing, y * spacing, z * spacing});
  return VoxelCloud::from_points(std::move(pts), depth);
}

}  // namespace voxsr::testing

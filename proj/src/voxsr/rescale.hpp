// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "voxsr/geometry.hpp"

namespace voxsr {

// Coordinate transforms between a cloud and its downscaled version:
//
//   down(v) = round((v - t) / s)        per component, round half up
//   nni(p)  = round(s * p) + t
//
// All arithmetic is exact (integer rational), so children_of() below is the
// bit-exact preimage of down(): per axis the integers in the half-open
// interval [s*(p - 1/2) + t, s*(p + 1/2) + t).

// Componentwise minimum of the cloud; the translation removed before scaling.
Vec3i translation_of(const VoxelCloud& cloud);

// Image of a single coordinate under the downscale map.
Vec3i downscale_point(const Vec3i& v, const ScaleFactor& s, const Vec3i& t);

// Downscales the whole cloud (s > 1, t componentwise <= min of cloud),
// removing duplicates. Output depth is the smallest covering the result.
VoxelCloud downscale(const VoxelCloud& cloud, const ScaleFactor& s, const Vec3i& t);

// Inclusive per-axis coordinate range of a parent's children (its preimage
// box). For 1 < s <= 2 each axis spans 1 or 2 integers.
struct ChildRange {
  Vec3i lo;
  Vec3i hi;

  int extent(int axis) const { return hi[axis] - lo[axis]; }  // 0 or more
  bool slot_valid(int ox, int oy, int oz) const {
    return ox <= extent(0) && oy <= extent(1) && oz <= extent(2);
  }
  std::int64_t count() const {
    return std::int64_t{extent(0) + 1} * (extent(1) + 1) * (extent(2) + 1);
  }
};

ChildRange child_range(const Vec3i& parent, const ScaleFactor& s, const Vec3i& t);

// All integer coordinates mapping to `parent` under the downscale map, in
// lexicographic order.
std::vector<Vec3i> children_of(const Vec3i& parent, const ScaleFactor& s, const Vec3i& t);

// Nearest-neighbour interpolation of a single coordinate: round(s * p) + t.
// The result always lies inside child_range(p, s, t).
Vec3i upscale_point_nni(const Vec3i& p, const ScaleFactor& s, const Vec3i& t);

// NNI upscale of the whole cloud (s > 1); duplicates removed.
VoxelCloud upscale_nni(const VoxelCloud& cloud, const ScaleFactor& s, const Vec3i& t);

// Multiplies every coordinate by k (a power of two >= 1). Injective, so the
// point count is preserved. Throws kOverflow past the depth limit.
VoxelCloud integer_upscale(const VoxelCloud& cloud, std::int32_t k);

}  // namespace voxsr

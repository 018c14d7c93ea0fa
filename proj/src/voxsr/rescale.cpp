// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/rescale.hpp"

#include <bit>
#include <limits>

#include "voxsr/error.hpp"

namespace voxsr {

namespace {

// Floor division for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b) != 0 && (a < 0)) --q;
  return q;
}

// Ceiling division for b > 0.
std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b) != 0 && (a > 0)) ++q;
  return q;
}

// round-half-up of a/b for b > 0: floor(a/b + 1/2) = floor((2a + b) / (2b)).
std::int64_t round_half_up(std::int64_t a, std::int64_t b) {
  return floor_div(2 * a + b, 2 * b);
}

void require_downscale_factor(const ScaleFactor& s) {
  if (s <= ScaleFactor(1)) fail(ErrorCode::kInvalidArgument, "scale factor must exceed 1");
}

std::int32_t checked_i32(std::int64_t v, const char* what) {
  if (v < std::numeric_limits<std::int32_t>::min() ||
      v > std::numeric_limits<std::int32_t>::max())
    fail(ErrorCode::kOverflow, std::string(what) + " overflows 32-bit coordinate");
  return static_cast<std::int32_t>(v);
}

}  // namespace

Vec3i translation_of(const VoxelCloud& cloud) { return cloud.min_corner(); }

Vec3i downscale_point(const Vec3i& v, const ScaleFactor& s, const Vec3i& t) {
  Vec3i p;
  for (int axis = 0; axis < 3; ++axis) {
    const std::int64_t shifted = std::int64_t{v[axis]} - t[axis];
    p[axis] = checked_i32(round_half_up(shifted * s.den(), s.num()), "downscaled point");
  }
  return p;
}

VoxelCloud downscale(const VoxelCloud& cloud, const ScaleFactor& s, const Vec3i& t) {
  require_downscale_factor(s);
  if (!cloud.empty()) {
    const Vec3i lo = cloud.min_corner();
    for (int axis = 0; axis < 3; ++axis)
      if (t[axis] > lo[axis])
        fail(ErrorCode::kInvalidArgument,
             "translation exceeds cloud minimum on axis " + std::to_string(axis));
  }
  std::vector<Vec3i> out;
  out.reserve(cloud.size());
  for (const Vec3i& v : cloud.points()) out.push_back(downscale_point(v, s, t));
  return VoxelCloud::from_points(std::move(out));
}

ChildRange child_range(const Vec3i& parent, const ScaleFactor& s, const Vec3i& t) {
  // v - t in [s*(p - 1/2), s*(p + 1/2)), i.e. (2p-1)*num <= 2*(v-t)*den < (2p+1)*num.
  ChildRange r;
  for (int axis = 0; axis < 3; ++axis) {
    const std::int64_t p = parent[axis];
    const std::int64_t lo = ceil_div(s.num() * (2 * p - 1), 2 * s.den());
    const std::int64_t hi = ceil_div(s.num() * (2 * p + 1), 2 * s.den()) - 1;
    r.lo[axis] = checked_i32(lo + t[axis], "child range");
    r.hi[axis] = checked_i32(hi + t[axis], "child range");
  }
  return r;
}

std::vector<Vec3i> children_of(const Vec3i& parent, const ScaleFactor& s, const Vec3i& t) {
  const ChildRange r = child_range(parent, s, t);
  std::vector<Vec3i> out;
  out.reserve(static_cast<std::size_t>(r.count()));
  for (std::int32_t x = r.lo.x; x <= r.hi.x; ++x)
    for (std::int32_t y = r.lo.y; y <= r.hi.y; ++y)
      for (std::int32_t z = r.lo.z; z <= r.hi.z; ++z) out.push_back({x, y, z});
  return out;
}

Vec3i upscale_point_nni(const Vec3i& p, const ScaleFactor& s, const Vec3i& t) {
  Vec3i v;
  for (int axis = 0; axis < 3; ++axis) {
    const std::int64_t scaled = round_half_up(std::int64_t{p[axis]} * s.num(), s.den());
    v[axis] = checked_i32(scaled + t[axis], "upscaled point");
  }
  return v;
}

VoxelCloud upscale_nni(const VoxelCloud& cloud, const ScaleFactor& s, const Vec3i& t) {
  require_downscale_factor(s);
  std::vector<Vec3i> out;
  out.reserve(cloud.size());
  for (const Vec3i& p : cloud.points()) out.push_back(upscale_point_nni(p, s, t));
  return VoxelCloud::from_points(std::move(out));
}

VoxelCloud integer_upscale(const VoxelCloud& cloud, std::int32_t k) {
  if (k < 1 || !std::has_single_bit(static_cast<std::uint32_t>(k)))
    fail(ErrorCode::kInvalidArgument, "upscale factor must be a power of two >= 1");
  if (!cloud.empty()) {
    const Vec3i hi = cloud.max_corner();
    for (int axis = 0; axis < 3; ++axis) {
      const std::int64_t scaled = std::int64_t{hi[axis]} * k;
      if (scaled >= (std::int64_t{1} << kMaxDepth))
        fail(ErrorCode::kOverflow, "integer upscale exceeds depth limit");
    }
  }
  std::vector<Vec3i> out;
  out.reserve(cloud.size());
  for (const Vec3i& p : cloud.points()) out.push_back({p.x * k, p.y * k, p.z * k});
  return VoxelCloud::from_points(std::move(out));
}

}  // namespace voxsr

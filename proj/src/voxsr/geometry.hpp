// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace voxsr {

// Coordinates are voxel indices on a 2^depth grid; 24 bits is the largest
// precision the library accepts.
inline constexpr int kMaxDepth = 24;

struct Vec3i {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  constexpr std::int32_t& operator[](int axis) {
    return axis == 0 ? x : axis == 1 ? y : z;
  }
  constexpr std::int32_t operator[](int axis) const {
    return axis == 0 ? x : axis == 1 ? y : z;
  }

  friend constexpr auto operator<=>(const Vec3i&, const Vec3i&) = default;

  friend constexpr Vec3i operator+(const Vec3i& a, const Vec3i& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3i operator-(const Vec3i& a, const Vec3i& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
};

// Exact positive rational, always stored reduced. Used for scale factors so
// that coordinate transforms can be evaluated in integer arithmetic with no
// rounding surprises near interval edges.
class ScaleFactor {
 public:
  ScaleFactor() = default;  // 1/1
  ScaleFactor(std::int64_t num, std::int64_t den = 1);

  // Accepts "N" or "N/D".
  static ScaleFactor parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }
  std::string str() const;

  ScaleFactor inverse() const;
  ScaleFactor times(const ScaleFactor& other) const;
  ScaleFactor divided_by(std::int64_t k) const;

  friend bool operator==(const ScaleFactor&, const ScaleFactor&) = default;
  friend std::strong_ordering operator<=>(const ScaleFactor& a, const ScaleFactor& b);

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

// Deduplicated set of integer voxel coordinates with a bit depth. Points are
// kept lexicographically sorted, so iteration order (and everything derived
// from it) is deterministic. Immutable after construction.
class VoxelCloud {
 public:
  VoxelCloud() = default;  // empty, depth 1

  // Sorts, deduplicates and validates. With an explicit depth every
  // coordinate must lie in [0, 2^depth - 1]; otherwise the depth is inferred
  // as the smallest one covering the data (at least 1).
  static VoxelCloud from_points(std::vector<Vec3i> points,
                                std::optional<int> depth = std::nullopt);

  const std::vector<Vec3i>& points() const { return points_; }
  int depth() const { return depth_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Vec3i& p) const;

  // Componentwise extrema; throw kEmptyCloud on an empty cloud.
  Vec3i min_corner() const;
  Vec3i max_corner() const;

  // Largest representable coordinate value at this depth.
  std::int64_t peak_value() const { return (std::int64_t{1} << depth_) - 1; }

  friend bool operator==(const VoxelCloud&, const VoxelCloud&) = default;

 private:
  std::vector<Vec3i> points_;
  int depth_ = 1;
};

// Smallest depth (>= 1) with max_coordinate < 2^depth; throws kOverflow past
// kMaxDepth and kInvalidArgument on negative input.
int depth_for_max_coordinate(std::int32_t max_coordinate);

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/geometry.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "voxsr/error.hpp"

namespace voxsr {

//============================================================================
// ScaleFactor

ScaleFactor::ScaleFactor(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (num_ <= 0 || den_ <= 0)
    fail(ErrorCode::kInvalidArgument, "scale factor must be positive");
  const std::int64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

ScaleFactor ScaleFactor::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::int64_t {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      fail(ErrorCode::kParse, "invalid scale '" + std::string(s) + "'");
    return v;
  };
  // strip surrounding whitespace
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) fail(ErrorCode::kParse, "empty scale");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ScaleFactor(parse_int(text));
  return ScaleFactor(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string ScaleFactor::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ScaleFactor ScaleFactor::inverse() const { return ScaleFactor(den_, num_); }

ScaleFactor ScaleFactor::times(const ScaleFactor& other) const {
  // Cross-reduce before multiplying to keep intermediates small.
  const std::int64_t g1 = std::gcd(num_, other.den_);
  const std::int64_t g2 = std::gcd(other.num_, den_);
  return ScaleFactor((num_ / g1) * (other.num_ / g2), (den_ / g2) * (other.den_ / g1));
}

ScaleFactor ScaleFactor::divided_by(std::int64_t k) const {
  if (k <= 0) fail(ErrorCode::kInvalidArgument, "divisor must be positive");
  return ScaleFactor(num_, den_ * k);
}

std::strong_ordering operator<=>(const ScaleFactor& a, const ScaleFactor& b) {
  const auto lhs = static_cast<__int128>(a.num_) * b.den_;
  const auto rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

//============================================================================
// VoxelCloud

int depth_for_max_coordinate(std::int32_t max_coordinate) {
  if (max_coordinate < 0)
    fail(ErrorCode::kInvalidArgument, "negative coordinate");
  const int d = std::max(1, static_cast<int>(std::bit_width(
                                static_cast<std::uint32_t>(max_coordinate))));
  if (d > kMaxDepth)
    fail(ErrorCode::kOverflow,
         "coordinate " + std::to_string(max_coordinate) + " exceeds " +
             std::to_string(kMaxDepth) + "-bit depth limit");
  return d;
}

VoxelCloud VoxelCloud::from_points(std::vector<Vec3i> points, std::optional<int> depth) {
  VoxelCloud cloud;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::int32_t max_coordinate = 0;
  for (const Vec3i& p : points) {
    for (int axis = 0; axis < 3; ++axis) {
      if (p[axis] < 0)
        fail(ErrorCode::kInvalidArgument, "negative coordinate in voxel cloud");
      max_coordinate = std::max(max_coordinate, p[axis]);
    }
  }

  if (depth) {
    if (*depth < 1 || *depth > kMaxDepth)
      fail(ErrorCode::kInvalidArgument,
           "depth must be in [1, " + std::to_string(kMaxDepth) + "]");
    if (!points.empty() && max_coordinate >= (std::int64_t{1} << *depth))
      fail(ErrorCode::kInvalidArgument,
           "coordinate " + std::to_string(max_coordinate) +
               " out of range for depth " + std::to_string(*depth));
    cloud.depth_ = *depth;
  } else {
    cloud.depth_ = points.empty() ? 1 : depth_for_max_coordinate(max_coordinate);
  }

  cloud.points_ = std::move(points);
  return cloud;
}

bool VoxelCloud::contains(const Vec3i& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

Vec3i VoxelCloud::min_corner() const {
  if (points_.empty()) fail(ErrorCode::kEmptyCloud, "empty cloud has no extent");
  Vec3i m = points_.front();
  for (const Vec3i& p : points_)
    for (int axis = 0; axis < 3; ++axis) m[axis] = std::min(m[axis], p[axis]);
  return m;
}

Vec3i VoxelCloud::max_corner() const {
  if (points_.empty()) fail(ErrorCode::kEmptyCloud, "empty cloud has no extent");
  Vec3i m = points_.front();
  for (const Vec3i& p : points_)
    for (int axis = 0; axis < 3; ++axis) m[axis] = std::max(m[axis], p[axis]);
  return m;
}

}  // namespace voxsr

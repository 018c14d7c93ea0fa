// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <random>

#include "support/brute_force.hpp"
#include "support/synthetic.hpp"
#include "voxsr/error.hpp"
#include "voxsr/rescale.hpp"

using namespace voxsr;

namespace {
const ScaleFactor kScales[] = {{16, 15}, {8, 7}, {4, 3}, {3, 2}, {2, 1}};
}

TEST_CASE("downscale merges by rounding half up") {
  const auto cloud = VoxelCloud::from_points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  const auto down = downscale(cloud, ScaleFactor(2), {0, 0, 0});
  CHECK(down.points() == std::vector<Vec3i>{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
}

TEST_CASE("downscale preserves count when spacing >= s") {
  const auto cloud = VoxelCloud::from_points({{0, 0, 0}, {2, 0, 0}});
  const auto down = downscale(cloud, ScaleFactor(2), {0, 0, 0});
  CHECK(down.points() == std::vector<Vec3i>{{0, 0, 0}, {1, 0, 0}});
  CHECK(down.size() == cloud.size());
}

TEST_CASE("downscale of a single point at its own translation") {
  const auto cloud = VoxelCloud::from_points({{2, 3, 4}});
  const auto down = downscale(cloud, ScaleFactor(2), {2, 3, 4});
  CHECK(down.points() == std::vector<Vec3i>{{0, 0, 0}});
}

TEST_CASE("downscale validates its inputs") {
  const auto cloud = VoxelCloud::from_points({{4, 4, 4}});
  CHECK_THROWS_AS(downscale(cloud, ScaleFactor(1), {0, 0, 0}), Error);
  CHECK_THROWS_AS(downscale(cloud, ScaleFactor(1, 2), {0, 0, 0}), Error);
  CHECK_THROWS_AS(downscale(cloud, ScaleFactor(2), {5, 0, 0}), Error);
}

TEST_CASE("downscale output depth fits the data") {
  const auto cloud = testing::filled_cube(16);
  const auto down = downscale(cloud, ScaleFactor(4, 3), {0, 0, 0});
  CHECK(down.depth() == depth_for_max_coordinate(down.max_corner().x));
  CHECK(down.size() <= cloud.size());
}

TEST_CASE("children_of matches hand-computed preimages") {
  CHECK(children_of({2, 0, 0}, ScaleFactor(4, 3), {0, 0, 0}) ==
        std::vector<Vec3i>{{2, 0, 0}, {3, 0, 0}});
  CHECK(children_of({1, 1, 1}, ScaleFactor(2), {0, 0, 0}).size() == 8);
  CHECK(children_of({0, 0, 0}, ScaleFactor(16, 15), {0, 0, 0}) ==
        std::vector<Vec3i>{{0, 0, 0}});
}

TEST_CASE("children_of agrees with enumeration oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int32_t> coord(0, 100);
  std::uniform_int_distribution<std::int32_t> tdist(0, 9);
  for (const ScaleFactor& s : kScales) {
    for (int round = 0; round < 50; ++round) {
      const Vec3i parent{coord(rng), coord(rng), coord(rng)};
      const Vec3i t{tdist(rng), tdist(rng), tdist(rng)};
      auto expected = testing::bf_children_of(parent, s, t);
      std::sort(expected.begin(), expected.end());
      CHECK(children_of(parent, s, t) == expected);
    }
  }
}

TEST_CASE("every point is a child of its own parent") {
  std::mt19937_64 rng(11);
  for (const ScaleFactor& s : kScales) {
    const auto cloud = testing::random_cloud(rng, 300, 9);
    const Vec3i t = translation_of(cloud);
    for (const Vec3i& v : cloud.points()) {
      const Vec3i parent = downscale_point(v, s, t);
      const auto children = children_of(parent, s, t);
      CHECK(std::find(children.begin(), children.end(), v) != children.end());
    }
  }
}

TEST_CASE("preimage partition on a small grid") {
  // exhaustive on 16^3 here; the acceptance suite runs the full 64^3 version
  for (const ScaleFactor& s : kScales) {
    const Vec3i t{0, 0, 0};
    std::map<Vec3i, Vec3i> parent_of;
    std::map<Vec3i, int> covered;
    for (std::int32_t x = 0; x < 16; ++x)
      for (std::int32_t y = 0; y < 16; ++y)
        for (std::int32_t z = 0; z < 16; ++z)
          parent_of[{x, y, z}] = downscale_point({x, y, z}, s, t);
    std::map<Vec3i, bool> seen_parent;
    for (const auto& [v, p] : parent_of) {
      if (seen_parent[p]) continue;
      seen_parent[p] = true;
      for (const Vec3i& c : children_of(p, s, t)) ++covered[c];
    }
    for (const auto& [v, p] : parent_of) {
      CHECK(covered[v] == 1);  // exactly one parent claims v
      const auto children = children_of(p, s, t);
      CHECK(std::find(children.begin(), children.end(), v) != children.end());
    }
  }
}

TEST_CASE("nni upscale arithmetic") {
  CHECK(upscale_nni(VoxelCloud::from_points({{0, 0, 0}}), ScaleFactor(4, 3), {0, 0, 0})
            .points() == std::vector<Vec3i>{{0, 0, 0}});
  CHECK(upscale_nni(VoxelCloud::from_points({{5, 5, 5}}), ScaleFactor(4, 3), {0, 0, 0})
            .points() == std::vector<Vec3i>{{7, 7, 7}});
}

TEST_CASE("nni point lies inside the preimage box") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int32_t> coord(0, 500);
  for (const ScaleFactor& s : kScales)
    for (int round = 0; round < 100; ++round) {
      const Vec3i p{coord(rng), coord(rng), coord(rng)};
      const Vec3i t{1, 2, 3};
      const Vec3i up = upscale_point_nni(p, s, t);
      const ChildRange r = child_range(p, s, t);
      for (int axis = 0; axis < 3; ++axis) {
        CHECK(up[axis] >= r.lo[axis]);
        CHECK(up[axis] <= r.hi[axis]);
      }
      CHECK(downscale_point(up, s, t) == p);
    }
}

TEST_CASE("round trip displacement bound") {
  // per axis |v - nni(down(v))| <= s/2 + 1/2, exactly: 2*den*|d| <= num + den
  std::mt19937_64 rng(19);
  for (const ScaleFactor& s : kScales) {
    for (int round = 0; round < 5; ++round) {
      const auto cloud = testing::random_cloud(rng, 500, 10);
      const Vec3i t = translation_of(cloud);
      for (const Vec3i& v : cloud.points()) {
        const Vec3i rec = upscale_point_nni(downscale_point(v, s, t), s, t);
        for (int axis = 0; axis < 3; ++axis) {
          const std::int64_t d = std::abs(std::int64_t{rec[axis]} - v[axis]);
          CHECK(2 * s.den() * d <= s.num() + s.den());
        }
      }
    }
  }
}

TEST_CASE("integer upscale") {
  const auto cloud = VoxelCloud::from_points({{1, 2, 3}});
  CHECK(integer_upscale(cloud, 1) == cloud);
  CHECK(integer_upscale(cloud, 4).points() == std::vector<Vec3i>{{4, 8, 12}});
  CHECK_THROWS_AS(integer_upscale(cloud, 3), Error);
  CHECK_THROWS_AS(integer_upscale(cloud, 0), Error);
  CHECK_THROWS_AS(integer_upscale(VoxelCloud::from_points({{1 << 22, 0, 0}}), 4), Error);
}

TEST_CASE("integer upscale then halving is the identity") {
  std::mt19937_64 rng(23);
  const auto cloud = testing::random_cloud(rng, 400, 9);
  const auto doubled = integer_upscale(cloud, 2);
  CHECK(doubled.size() == cloud.size());
  const auto back = downscale(doubled, ScaleFactor(2), {0, 0, 0});
  CHECK(back.points() == cloud.points());
}

TEST_CASE("downscale against the inequality oracle") {
  std::mt19937_64 rng(31);
  for (const ScaleFactor& s : kScales) {
    const auto cloud = testing::random_cloud(rng, 300, 8);
    const Vec3i t = translation_of(cloud);
    const auto ours = downscale(cloud, s, t);
    std::vector<Vec3i> pts(cloud.points().begin(), cloud.points().end());
    const auto expected = testing::bf_downscale(pts, s, t);
    CHECK(ours.points() == expected);
  }
}

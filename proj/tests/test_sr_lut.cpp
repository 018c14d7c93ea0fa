// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <sstream>

#include "support/brute_force.hpp"
#include "support/synthetic.hpp"
#include "voxsr/error.hpp"
#include "voxsr/sr_lut.hpp"

using namespace voxsr;

TEST_CASE("neighborhood code of an isolated voxel is zero") {
  const auto cloud = VoxelCloud::from_points({{4, 4, 4}});
  CHECK(neighborhood_code(cloud, {4, 4, 4}) == 0);
}

TEST_CASE("neighborhood code bit indexing") {
  // neighbor at +x only: offset (1,0,0) -> raw index 22 -> bit 21
  const auto cloud = VoxelCloud::from_points({{1, 0, 0}});
  CHECK(neighborhood_code(cloud, {0, 0, 0}) == (NeighborhoodCode{1} << 21));
}

TEST_CASE("neighborhood code saturates inside a solid block") {
  const auto cloud = testing::filled_cube(3);
  CHECK(neighborhood_code(cloud, {1, 1, 1}) == (NeighborhoodCode{1} << 26) - 1);
}

TEST_CASE("neighborhood code matches the ordinal-counting oracle") {
  std::mt19937_64 rng(5);
  const auto cloud = testing::random_cloud(rng, 300, 5);
  const std::vector<Vec3i> pts(cloud.points().begin(), cloud.points().end());
  for (const Vec3i& v : cloud.points())
    CHECK(neighborhood_code(cloud, v) == testing::bf_neighborhood_code(pts, v));
}

TEST_CASE("single-point lut") {
  const auto v_d = VoxelCloud::from_points({{5, 5, 5}});
  const auto lut = build_lut(v_d, ScaleFactor(4, 3));
  CHECK(lut.entry_count() == 1);
  const SlotCounters* counters = lut.find(0);
  REQUIRE(counters != nullptr);
  CHECK((*counters)[child_slot_index(0, 0, 0)] == SlotCounter{1, 1});
  for (int slot = 1; slot < kChildSlots; ++slot)
    CHECK((*counters)[static_cast<std::size_t>(slot)].total == 0);
}

TEST_CASE("interior of a filled cube trains fully-occupied slots") {
  const auto v_d = testing::filled_cube(16);
  const auto lut = build_lut(v_d, ScaleFactor(2));
  const NeighborhoodCode full = (NeighborhoodCode{1} << 26) - 1;
  const SlotCounters* counters = lut.find(full);
  REQUIRE(counters != nullptr);
  for (int slot = 0; slot < kChildSlots; ++slot) {
    CHECK((*counters)[static_cast<std::size_t>(slot)].total > 0);
    CHECK((*counters)[static_cast<std::size_t>(slot)].occupied ==
          (*counters)[static_cast<std::size_t>(slot)].total);
  }
}

TEST_CASE("lut counters never exceed totals") {
  std::mt19937_64 rng(17);
  for (const ScaleFactor& s : {ScaleFactor(16, 15), ScaleFactor(4, 3), ScaleFactor(2)}) {
    const auto v_d = testing::random_cloud(rng, 400, 6);
    const auto lut = build_lut(v_d, s);
    std::size_t total_slots = 0;
    for (const auto& [code, counters] : lut.entries())
      for (const SlotCounter& c : counters) {
        CHECK(c.occupied <= c.total);
        total_slots += c.total;
      }
    // every training parent contributes its valid slot count exactly once
    std::size_t expected = 0;
    const auto v_dd = downscale(v_d, s, translation_of(v_d));
    for (const Vec3i& p : v_dd.points())
      expected += static_cast<std::size_t>(child_range(p, s, translation_of(v_d)).count());
    CHECK(total_slots == expected);
  }
}

TEST_CASE("build_lut validates inputs") {
  CHECK_THROWS_AS(build_lut(VoxelCloud{}, ScaleFactor(4, 3)), Error);
  const auto cloud = VoxelCloud::from_points({{1, 1, 1}});
  CHECK_THROWS_AS(build_lut(cloud, ScaleFactor(3)), Error);
  CHECK_THROWS_AS(build_lut(cloud, ScaleFactor(1)), Error);
}

TEST_CASE("apply_sr on an empty cloud yields an empty cloud") {
  OccupancyLut lut((ScaleFactor(4, 3)));
  const auto out = apply_sr(VoxelCloud{}, ScaleFactor(4, 3), {0, 0, 0}, lut);
  CHECK(out.empty());
}

TEST_CASE("apply_sr rejects a mismatched lut") {
  const auto v_d = VoxelCloud::from_points({{5, 5, 5}});
  const auto lut = build_lut(v_d, ScaleFactor(4, 3));
  CHECK_THROWS_AS(apply_sr(v_d, ScaleFactor(3, 2), {0, 0, 0}, lut), Error);
}

TEST_CASE("single-point prediction plus nni fallback") {
  const auto v_d = VoxelCloud::from_points({{5, 5, 5}});
  const auto lut = build_lut(v_d, ScaleFactor(4, 3));
  const auto out = apply_sr(v_d, ScaleFactor(4, 3), {0, 0, 0}, lut);
  CHECK(out.points() == std::vector<Vec3i>{{6, 6, 6}, {7, 7, 7}});
}

TEST_CASE("apply_sr output bracketed by nni and the children union") {
  std::mt19937_64 rng(29);
  for (const ScaleFactor& s : {ScaleFactor(16, 15), ScaleFactor(4, 3), ScaleFactor(2)}) {
    const auto v_d = testing::random_cloud(rng, 300, 6);
    const Vec3i t{0, 0, 0};
    const auto lut = build_lut(v_d, s);
    const auto out = apply_sr(v_d, s, t, lut);
    const auto nni = upscale_nni(v_d, s, t);
    for (const Vec3i& p : nni.points()) CHECK(out.contains(p));
    for (const Vec3i& p : out.points()) {
      const Vec3i parent = downscale_point(p, s, t);
      CHECK(v_d.contains(parent));
    }
  }
}

TEST_CASE("solid cube equals the brute-force oracle") {
  const auto v = testing::filled_cube(24);
  const auto v_d = downscale(v, ScaleFactor(4, 3), {0, 0, 0});
  const std::vector<Vec3i> pts(v_d.points().begin(), v_d.points().end());

  const auto lut = build_lut(v_d, ScaleFactor(4, 3));
  const auto bf_lut = testing::bf_build_lut(pts, ScaleFactor(4, 3));

  std::size_t nonzero = 0;
  for (const auto& [code, counters] : lut.entries())
    for (int slot = 0; slot < kChildSlots; ++slot) {
      const SlotCounter& c = counters[static_cast<std::size_t>(slot)];
      if (c.total == 0) continue;
      ++nonzero;
      const auto it = bf_lut.find({code, slot});
      REQUIRE(it != bf_lut.end());
      CHECK(it->second.first == c.occupied);
      CHECK(it->second.second == c.total);
    }
  CHECK(nonzero == bf_lut.size());

  const auto ours = apply_sr(v_d, ScaleFactor(4, 3), {0, 0, 0}, lut);
  const auto expected = testing::bf_apply_sr(pts, ScaleFactor(4, 3), {0, 0, 0}, bf_lut);
  CHECK(ours.points() == expected);
}

TEST_CASE("filled-cube self consistency at s = 2") {
  // the interior of the original solid is reproduced exactly
  const auto v = testing::filled_cube(16);
  const auto v_d = downscale(v, ScaleFactor(2), {0, 0, 0});
  const auto lut = build_lut(v_d, ScaleFactor(2));
  const auto sr = apply_sr(v_d, ScaleFactor(2), {0, 0, 0}, lut);
  for (const Vec3i& p : v.points()) {
    bool interior = true;
    for (int axis = 0; axis < 3; ++axis)
      interior = interior && p[axis] >= 1 && p[axis] <= 14;
    if (interior) CHECK(sr.contains(p));
  }
}

TEST_CASE("build and apply are deterministic") {
  std::mt19937_64 rng(41);
  const auto v_d = testing::random_cloud(rng, 500, 7);
  const auto lut1 = build_lut(v_d, ScaleFactor(4, 3));
  const auto lut2 = build_lut(v_d, ScaleFactor(4, 3));
  CHECK(lut1 == lut2);
  const auto out1 = apply_sr(v_d, ScaleFactor(4, 3), {1, 2, 3}, lut1);
  const auto out2 = apply_sr(v_d, ScaleFactor(4, 3), {1, 2, 3}, lut2);
  CHECK(out1 == out2);
}

TEST_CASE("lut csv round trip") {
  std::mt19937_64 rng(43);
  const auto v_d = testing::random_cloud(rng, 400, 6);
  const auto lut = build_lut(v_d, ScaleFactor(8, 7));
  std::ostringstream out;
  lut.save_csv(out);
  std::istringstream in(out.str());
  const auto loaded = OccupancyLut::load_csv(in);
  CHECK(loaded.scale() == lut.scale());
  CHECK(loaded == lut);

  std::istringstream junk("nonsense\n");
  CHECK_THROWS_AS(OccupancyLut::load_csv(junk), Error);
}

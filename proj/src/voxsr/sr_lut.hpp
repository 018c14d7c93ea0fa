// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>

#include "voxsr/geometry.hpp"
#include "voxsr/rescale.hpp"

namespace voxsr {

// 26-bit occupancy mask of the 3x3x3 shell around a voxel. Offset
// (dx,dy,dz) in {-1,0,1}^3 \ {0} maps to index (dx+1)*9 + (dy+1)*3 + (dz+1),
// decremented by one past the skipped centre, so bits run 0..25.
using NeighborhoodCode = std::uint32_t;

inline constexpr int kNeighborhoodBits = 26;

// Out-of-bounds neighbours count as unoccupied; v itself need not be occupied.
NeighborhoodCode neighborhood_code(const VoxelCloud& cloud, const Vec3i& v);

// Child slots are the 8 offsets in {0,1}^3 relative to the componentwise
// minimum of a parent's preimage box. A slot is geometrically valid for a
// parent only if min-child + offset is actually one of its children.
inline constexpr int kChildSlots = 8;

constexpr int child_slot_index(int ox, int oy, int oz) { return ox * 4 + oy * 2 + oz; }
constexpr Vec3i child_slot_offset(int slot) {
  return {(slot >> 2) & 1, (slot >> 1) & 1, slot & 1};
}

struct SlotCounter {
  std::uint32_t occupied = 0;
  std::uint32_t total = 0;

  friend bool operator==(const SlotCounter&, const SlotCounter&) = default;
};

using SlotCounters = std::array<SlotCounter, kChildSlots>;

// Sparse map from neighbourhood code to per-slot occupancy counters,
// accumulated for one scale factor. Immutable once built.
class OccupancyLut {
 public:
  explicit OccupancyLut(const ScaleFactor& scale) : scale_(scale) {}

  const ScaleFactor& scale() const { return scale_; }
  std::size_t entry_count() const { return entries_.size(); }

  SlotCounters& entry(NeighborhoodCode code) { return entries_[code]; }
  const SlotCounters* find(NeighborhoodCode code) const {
    auto it = entries_.find(code);
    return it == entries_.end() ? nullptr : &it->second;
  }
  const std::unordered_map<NeighborhoodCode, SlotCounters>& entries() const {
    return entries_;
  }

  // Debug dump: "code,slot,occupied,total" rows (total > 0 only), preceded by
  // a "# scale N/D" line. load_csv() restores an identical table.
  void save_csv(std::ostream& out) const;
  static OccupancyLut load_csv(std::istream& in);

  friend bool operator==(const OccupancyLut&, const OccupancyLut&) = default;

 private:
  ScaleFactor scale_;
  std::unordered_map<NeighborhoodCode, SlotCounters> entries_;
};

// Trains a LUT on the cloud itself (1 < s <= 2): downscales v_d once more and
// accumulates, for every parent of that coarser cloud, which geometrically
// valid child slots are occupied in v_d, keyed by the parent's neighbourhood
// code in the coarser cloud.
OccupancyLut build_lut(const VoxelCloud& v_d, const ScaleFactor& s);

// Predicts children for every occupied parent of v_d (1 < s <= 2): a valid
// slot is occupied when its LUT counter reaches a majority
// (2 * occupied >= total, total > 0). The NNI upscale of v_d is unioned in,
// so every parent contributes at least one output point. Children that fall
// below coordinate zero are discarded.
VoxelCloud apply_sr(const VoxelCloud& v_d, const ScaleFactor& s, const Vec3i& translation,
                    const OccupancyLut& lut);

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/sr_lut.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "voxsr/error.hpp"

namespace voxsr {

namespace {

void require_sr_factor(const ScaleFactor& s) {
  if (s <= ScaleFactor(1) || s > ScaleFactor(2))
    fail(ErrorCode::kInvalidArgument,
         "super-resolution factor must satisfy 1 < s <= 2, got " + s.str());
}

}  // namespace

NeighborhoodCode neighborhood_code(const VoxelCloud& cloud, const Vec3i& v) {
  NeighborhoodCode code = 0;
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dz = -1; dz <= 1; ++dz) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const int i = (dx + 1) * 9 + (dy + 1) * 3 + (dz + 1);
        const int bit = i > 13 ? i - 1 : i;
        if (cloud.contains({v.x + dx, v.y + dy, v.z + dz}))
          code |= NeighborhoodCode{1} << bit;
      }
  return code;
}

OccupancyLut build_lut(const VoxelCloud& v_d, const ScaleFactor& s) {
  require_sr_factor(s);
  if (v_d.empty()) fail(ErrorCode::kEmptyCloud, "cannot train on an empty cloud");

  const Vec3i t = translation_of(v_d);
  const VoxelCloud v_dd = downscale(v_d, s, t);

  OccupancyLut lut(s);
  for (const Vec3i& parent : v_dd.points()) {
    const NeighborhoodCode code = neighborhood_code(v_dd, parent);
    const ChildRange range = child_range(parent, s, t);
    SlotCounters& counters = lut.entry(code);
    for (int slot = 0; slot < kChildSlots; ++slot) {
      const Vec3i off = child_slot_offset(slot);
      if (!range.slot_valid(off.x, off.y, off.z)) continue;
      SlotCounter& c = counters[static_cast<std::size_t>(slot)];
      ++c.total;
      if (v_d.contains(range.lo + off)) ++c.occupied;
    }
  }
  return lut;
}

VoxelCloud apply_sr(const VoxelCloud& v_d, const ScaleFactor& s, const Vec3i& translation,
                    const OccupancyLut& lut) {
  require_sr_factor(s);
  if (lut.scale() != s)
    fail(ErrorCode::kScaleMismatch,
         "lut trained for scale " + lut.scale().str() + ", applied with " + s.str());

  std::vector<Vec3i> out;
  out.reserve(v_d.size() * 2);
  for (const Vec3i& parent : v_d.points()) {
    const NeighborhoodCode code = neighborhood_code(v_d, parent);
    const ChildRange range = child_range(parent, s, translation);
    if (const SlotCounters* counters = lut.find(code)) {
      for (int slot = 0; slot < kChildSlots; ++slot) {
        const Vec3i off = child_slot_offset(slot);
        if (!range.slot_valid(off.x, off.y, off.z)) continue;
        const SlotCounter& c = (*counters)[static_cast<std::size_t>(slot)];
        if (c.total == 0 || 2 * c.occupied < c.total) continue;
        const Vec3i child = range.lo + off;
        if (child.x < 0 || child.y < 0 || child.z < 0) continue;
        out.push_back(child);
      }
    }
    // fallback union: the plain NNI point, always inside the preimage box
    out.push_back(upscale_point_nni(parent, s, translation));
  }
  return VoxelCloud::from_points(std::move(out));
}

//============================================================================
// debug dump

void OccupancyLut::save_csv(std::ostream& out) const {
  out << "# scale " << scale_.str() << "\n";
  out << "code,slot,occupied,total\n";
  std::vector<NeighborhoodCode> codes;
  codes.reserve(entries_.size());
  for (const auto& [code, counters] : entries_) codes.push_back(code);
  std::sort(codes.begin(), codes.end());
  for (const NeighborhoodCode code : codes) {
    const SlotCounters& counters = entries_.at(code);
    for (int slot = 0; slot < kChildSlots; ++slot) {
      const SlotCounter& c = counters[static_cast<std::size_t>(slot)];
      if (c.total == 0) continue;
      out << code << ',' << slot << ',' << c.occupied << ',' << c.total << '\n';
    }
  }
  if (!out) fail(ErrorCode::kIo, "failed to write lut csv");
}

OccupancyLut OccupancyLut::load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "empty lut csv");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("# scale ", 0) != 0) fail(ErrorCode::kParse, "missing lut scale line");
  OccupancyLut lut(ScaleFactor::parse(line.substr(8)));

  if (!std::getline(in, line)) fail(ErrorCode::kParse, "missing lut csv header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "code,slot,occupied,total") fail(ErrorCode::kParse, "bad lut csv header");

  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint64_t code = 0, slot = 0, occupied = 0, total = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> code >> c1 >> slot >> c2 >> occupied >> c3 >> total) || c1 != ',' ||
        c2 != ',' || c3 != ',' || code >= (1u << kNeighborhoodBits) || slot >= kChildSlots ||
        occupied > total)
      fail(ErrorCode::kParse, "malformed lut csv row at line " + std::to_string(lineno));
    SlotCounter& counter = lut.entry(static_cast<NeighborhoodCode>(code))[slot];
    counter.occupied = static_cast<std::uint32_t>(occupied);
    counter.total = static_cast<std::uint32_t>(total);
  }
  return lut;
}

}  // namespace voxsr

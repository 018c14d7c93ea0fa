// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "voxsr/geometry.hpp"

namespace voxsr {

enum class PlyFormat { kAscii, kBinaryLittleEndian };

// Reads a PLY file (ascii or binary_little_endian) with a vertex element
// carrying scalar x, y, z properties of any numeric type. Floating values
// are rounded half up; coordinates are clamped to [0, 2^depth - 1]. The
// depth is taken from the argument if given, else from a "comment depth N"
// header line (written by save_ply), else inferred from the data. All
// non-geometry properties and elements are ignored.
VoxelCloud load_ply(std::istream& in, std::optional<int> depth = std::nullopt);

// Writes the cloud with x, y, z as the narrowest sufficient unsigned integer
// property type, plus a "comment depth N" line so a reload reproduces the
// cloud exactly.
void save_ply(const VoxelCloud& cloud, std::ostream& out, PlyFormat format);

VoxelCloud load_ply_file(const std::filesystem::path& path,
                         std::optional<int> depth = std::nullopt);
void save_ply_file(const VoxelCloud& cloud, const std::filesystem::path& path,
                   PlyFormat format);

}  // namespace voxsr

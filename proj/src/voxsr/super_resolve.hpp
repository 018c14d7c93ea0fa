// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "voxsr/geometry.hpp"
#include "voxsr/sr_lut.hpp"

namespace voxsr {

// Largest pre-densification factor that may be applied to a sparse cloud; it
// fits in 4 bits of side information as log2.
inline constexpr int kMaxSPrime = 2048;

// Splits s > 1 into factors [2, 2, ..., r] with 1 < r <= 2, fractional
// residue last. The exact rational product of the factors equals s; for
// s <= 2 the result is just [s].
std::vector<ScaleFactor> factorize_scale(const ScaleFactor& s);

// Full self-supervised reconstruction for any s > 1: one build_lut/apply_sr
// pass per factor from factorize_scale(s). Intermediate passes use a zero
// translation; the final pass applies `translation` so the composition lands
// back in the original coordinate frame.
VoxelCloud super_resolve(const VoxelCloud& v_d, const ScaleFactor& s, const Vec3i& translation);

// Highest power of two s' <= kMaxSPrime whose downscale keeps at least 95%
// of the cloud's points distinct; 1 when even s' = 2 merges more than that.
int choose_s_prime(const VoxelCloud& cloud);

// Down-up-scaling pipeline for sparse clouds: pre-downscale by s', simulate
// the codec with a downscale by s, super-resolve, then upscale by s' again.
// If `external_decoded` is given it replaces the simulated codec output.
VoxelCloud dus_super_resolve(const VoxelCloud& cloud, const ScaleFactor& s, int s_prime,
                             const VoxelCloud* external_decoded = nullptr);

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/super_resolve.hpp"

#include <bit>

#include "voxsr/error.hpp"
#include "voxsr/rescale.hpp"

namespace voxsr {

std::vector<ScaleFactor> factorize_scale(const ScaleFactor& s) {
  if (s <= ScaleFactor(1)) fail(ErrorCode::kInvalidArgument, "scale factor must exceed 1");
  std::vector<ScaleFactor> factors;
  ScaleFactor rest = s;
  while (rest > ScaleFactor(2)) {
    factors.emplace_back(2);
    rest = rest.divided_by(2);
  }
  factors.push_back(rest);
  return factors;
}

VoxelCloud super_resolve(const VoxelCloud& v_d, const ScaleFactor& s, const Vec3i& translation) {
  const std::vector<ScaleFactor> factors = factorize_scale(s);
  VoxelCloud current = v_d;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const bool last = i + 1 == factors.size();
    const Vec3i t = last ? translation : Vec3i{0, 0, 0};
    const OccupancyLut lut = build_lut(current, factors[i]);
    current = apply_sr(current, factors[i], t, lut);
  }
  return current;
}

int choose_s_prime(const VoxelCloud& cloud) {
  if (cloud.empty()) fail(ErrorCode::kEmptyCloud, "cannot pick s' for an empty cloud");
  const Vec3i t = translation_of(cloud);
  // retention threshold: |downscaled| >= 95% of |cloud|, evaluated exactly
  for (int s_prime = kMaxSPrime; s_prime >= 2; s_prime /= 2) {
    const std::size_t kept = downscale(cloud, ScaleFactor(s_prime), t).size();
    if (kept * 20 >= cloud.size() * 19) return s_prime;
  }
  return 1;
}

VoxelCloud dus_super_resolve(const VoxelCloud& cloud, const ScaleFactor& s, int s_prime,
                             const VoxelCloud* external_decoded) {
  if (s_prime < 1 || s_prime > kMaxSPrime ||
      !std::has_single_bit(static_cast<std::uint32_t>(s_prime)))
    fail(ErrorCode::kInvalidArgument, "s' must be a power of two in [1, 2048]");
  if (cloud.empty()) fail(ErrorCode::kEmptyCloud, "empty input cloud");

  const VoxelCloud dense =
      s_prime > 1 ? downscale(cloud, ScaleFactor(s_prime), translation_of(cloud)) : cloud;
  const Vec3i t = translation_of(dense);
  const VoxelCloud decoded = external_decoded ? *external_decoded : downscale(dense, s, t);
  if (decoded.empty()) fail(ErrorCode::kEmptyCloud, "decoded cloud is empty");

  const VoxelCloud resolved = super_resolve(decoded, s, t);
  return integer_upscale(resolved, s_prime);
}

}  // namespace voxsr

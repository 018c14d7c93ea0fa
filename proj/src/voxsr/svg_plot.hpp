// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "voxsr/rd_curve.hpp"

namespace voxsr {

// Renders rate-distortion curves as a static SVG: rate (bits per input
// point) on x, D1 PSNR (dB) on y, one polyline and one legend entry per
// curve. Points with infinite PSNR are clipped to the top of the y axis and
// drawn with an "inf" marker.
void emit_plot(const std::vector<RdCurve>& curves, std::ostream& out);

}  // namespace voxsr

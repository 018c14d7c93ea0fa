// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "voxsr/geometry.hpp"

namespace voxsr {

// One cell of the common-test-conditions rate table: the encoder's
// positionQuantizationScale for a geometry precision and rate id, and the
// scale factor s = 1/pqs it implies.
struct CtcRatePoint {
  int precision;        // 10 or 11
  int rate_index;       // 1..6 (R1 lowest rate)
  ScaleFactor pqs;
  ScaleFactor scale;    // 1/pqs
};

// All 12 table cells, precision-major, R1..R6 within a precision.
const std::vector<CtcRatePoint>& ctc_table();

// Scale factor for one cell; rate_id is "R1".."R6". Anything outside the
// table is rejected.
ScaleFactor ctc_scale(int precision, std::string_view rate_id);

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "voxsr/geometry.hpp"

namespace voxsr {

struct RdPoint {
  double rate_bpp = 0.0;  // bits per input point, > 0
  double psnr_db = 0.0;   // may be +infinity

  friend bool operator==(const RdPoint&, const RdPoint&) = default;
};

struct RdCurve {
  std::string label;
  std::vector<RdPoint> points;  // strictly increasing rate

  friend bool operator==(const RdCurve&, const RdCurve&) = default;
};

// Loads curves from a CSV whose header names at least `rate_bpp` and
// `d1_psnr_db` columns. Rows are grouped by the `label` column (or, when a
// report is loaded, by "cloud/condition"); each curve is sorted by rate.
// Extra columns are ignored; rows with a blank rate are skipped. Duplicate
// rates within one label are rejected.
std::vector<RdCurve> load_rd_csv(std::istream& in);
std::vector<RdCurve> load_rd_csv_file(const std::string& path);

struct BdRateResult {
  double percent = 0.0;           // negative: test saves rate vs anchor
  bool low_point_fallback = false;  // set when a curve had fewer than 4 points
};

// Bjontegaard delta rate between two curves: least-squares cubic fits of
// log10(rate) against quality (piecewise-cubic interpolation when a curve
// has only 2 or 3 points), integrated over the common quality interval with
// 1000 trapezoid samples. Points with infinite quality are excluded.
BdRateResult bd_rate(const RdCurve& anchor, const RdCurve& test);

}  // namespace voxsr

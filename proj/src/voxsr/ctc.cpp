// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/ctc.hpp"

#include "voxsr/error.hpp"

namespace voxsr {

const std::vector<CtcRatePoint>& ctc_table() {
  static const std::vector<CtcRatePoint> table = [] {
    // pqs per (precision, rate id); R6 is the highest rate / mildest scaling
    struct Row {
      int precision;
      std::pair<int, int> pqs[6];  // R1..R6
    };
    constexpr Row rows[] = {
        {10, {{1, 8}, {1, 4}, {1, 2}, {3, 4}, {7, 8}, {15, 16}}},
        {11, {{1, 16}, {1, 8}, {1, 4}, {1, 2}, {3, 4}, {7, 8}}},
    };
    std::vector<CtcRatePoint> cells;
    for (const Row& row : rows)
      for (int r = 1; r <= 6; ++r) {
        const auto [n, d] = row.pqs[r - 1];
        const ScaleFactor pqs(n, d);
        cells.push_back({row.precision, r, pqs, pqs.inverse()});
      }
    return cells;
  }();
  return table;
}

ScaleFactor ctc_scale(int precision, std::string_view rate_id) {
  if (rate_id.size() == 2 && rate_id[0] == 'R' && rate_id[1] >= '1' && rate_id[1] <= '6') {
    const int index = rate_id[1] - '0';
    for (const CtcRatePoint& cell : ctc_table())
      if (cell.precision == precision && cell.rate_index == index) return cell.scale;
  }
  fail(ErrorCode::kInvalidArgument,
       "no CTC rate point for precision " + std::to_string(precision) + ", rate id '" +
           std::string(rate_id) + "'");
}

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <limits>
#include <sstream>

#include "voxsr/error.hpp"
#include "voxsr/svg_plot.hpp"

using namespace voxsr;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("one curve renders one polyline with all vertices") {
  RdCurve c{"gpcc", {{0.1, 50}, {0.2, 55}, {0.4, 60}, {0.8, 65}}};
  std::ostringstream out;
  emit_plot({c}, out);
  const std::string svg = out.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_occurrences(svg, "<polyline") == 1);
  CHECK(count_occurrences(svg, "class=\"legend\"") == 1);
  CHECK(svg.find("gpcc") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  // 4 vertices -> 4 "x,y" pairs in the points attribute
  const auto begin = svg.find("points=\"");
  const auto end = svg.find('"', begin + 8);
  const std::string pts = svg.substr(begin + 8, end - begin - 8);
  CHECK(count_occurrences(pts, ",") == 4);
}

TEST_CASE("two curves get two legend entries") {
  RdCurve a{"frac-sr", {{0.1, 52}, {0.4, 62}}};
  RdCurve b{"nni", {{0.1, 50}, {0.4, 58}}};
  std::ostringstream out;
  emit_plot({a, b}, out);
  const std::string svg = out.str();
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(count_occurrences(svg, "class=\"legend\"") == 2);
}

TEST_CASE("infinite psnr is clipped to the axis top with a marker") {
  RdCurve c{"lossless-tail",
            {{0.1, 50}, {0.4, 60}, {0.8, std::numeric_limits<double>::infinity()}}};
  std::ostringstream out;
  emit_plot({c}, out);
  const std::string svg = out.str();
  CHECK(count_occurrences(svg, "class=\"inf-marker\"") == 1);
  CHECK(svg.find(">inf</text>") != std::string::npos);
}

TEST_CASE("labels are xml-escaped") {
  RdCurve c{"a<b&c", {{0.1, 50}, {0.2, 51}}};
  std::ostringstream out;
  emit_plot({c}, out);
  CHECK(out.str().find("a&lt;b&amp;c") != std::string::npos);
  CHECK(out.str().find("a<b&c") == std::string::npos);
}

TEST_CASE("empty inputs are rejected") {
  std::ostringstream out;
  CHECK_THROWS_AS(emit_plot({}, out), Error);
  CHECK_THROWS_AS(emit_plot({RdCurve{"empty", {}}}, out), Error);
}

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "voxsr/error.hpp"

namespace voxsr {

namespace {

constexpr double kWidth = 820, kHeight = 560;
constexpr double kLeft = 72, kRight = 190, kTop = 28, kBottom = 64;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void emit_plot(const std::vector<RdCurve>& curves, std::ostream& out) {
  if (curves.empty()) fail(ErrorCode::kInvalidArgument, "nothing to plot");
  for (const RdCurve& c : curves)
    if (c.points.empty()) fail(ErrorCode::kInvalidArgument, "empty curve '" + c.label + "'");

  double xmin = std::numeric_limits<double>::max(), xmax = 0.0;
  double ymin = std::numeric_limits<double>::max(), ymax = -ymin;
  bool any_finite = false;
  for (const RdCurve& c : curves)
    for (const RdPoint& p : c.points) {
      xmin = std::min(xmin, p.rate_bpp);
      xmax = std::max(xmax, p.rate_bpp);
      if (std::isfinite(p.psnr_db)) {
        any_finite = true;
        ymin = std::min(ymin, p.psnr_db);
        ymax = std::max(ymax, p.psnr_db);
      }
    }
  if (!any_finite) {
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  // headroom so markers do not sit on the frame
  const double ypad = (ymax - ymin) * 0.05;
  ymin -= ypad;
  ymax += ypad;
  const double xpad = (xmax - xmin) * 0.05;
  xmin = std::max(0.0, xmin - xpad);
  xmax += xpad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double rate) { return kLeft + (rate - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double psnr) { return kTop + (ymax - psnr) / (ymax - ymin) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "  <rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // ticks
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / kTicks;
    const double fy = ymin + (ymax - ymin) * i / kTicks;
    const double px = sx(fx);
    const double py = sy(fy);
    out << "  <line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
    out << "  <text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    out << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
        << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
    out << "  <text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  out << "  <text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" font-size=\"13\" text-anchor=\"middle\">rate (bits per input point)</text>\n";
  out << "  <text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">D1 PSNR (dB)</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const RdCurve& curve = curves[ci];
    const char* color = kPalette[ci % kPaletteSize];
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const RdPoint& p = curve.points[i];
      const double y = std::isfinite(p.psnr_db) ? p.psnr_db : ymax;
      if (i) out << ' ';
      out << fmt(sx(p.rate_bpp)) << ',' << fmt(sy(y));
    }
    out << "\"/>\n";
    for (const RdPoint& p : curve.points) {
      if (std::isfinite(p.psnr_db)) {
        out << "  <circle cx=\"" << fmt(sx(p.rate_bpp)) << "\" cy=\"" << fmt(sy(p.psnr_db))
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      } else {
        // infinite quality: clip to the axis top and mark it
        out << "  <circle class=\"inf-marker\" cx=\"" << fmt(sx(p.rate_bpp)) << "\" cy=\""
            << fmt(sy(ymax)) << "\" r=\"3.5\" fill=\"none\" stroke=\"" << color << "\"/>\n";
        out << "  <text x=\"" << fmt(sx(p.rate_bpp)) << "\" y=\"" << fmt(sy(ymax) - 6)
            << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"" << color
            << "\">inf</text>\n";
      }
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(ci);
    out << "  <line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << kWidth - kRight + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "  <text class=\"legend\" x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << escape_xml(curve.label) << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) fail(ErrorCode::kIo, "failed to write svg");
}

}  // namespace voxsr

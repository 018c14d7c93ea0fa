// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/rd_curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "voxsr/error.hpp"

namespace voxsr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream iss(line);
  while (std::getline(iss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t lineno) {
  const std::string text = trim(field);
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(ErrorCode::kParse, "bad numeric field '" + field + "' at line " + std::to_string(lineno));
  return v;
}

int find_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (trim(header[i]) == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

std::vector<RdCurve> load_rd_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "empty csv");
  const auto header = split_csv_line(line);

  const int rate_col = find_column(header, "rate_bpp");
  const int psnr_col = find_column(header, "d1_psnr_db");
  const int label_col = find_column(header, "label");
  const int cloud_col = find_column(header, "cloud");
  const int cond_col = find_column(header, "condition");
  if (rate_col < 0 || psnr_col < 0)
    fail(ErrorCode::kParse, "csv header must name rate_bpp and d1_psnr_db columns");
  if (label_col < 0 && (cloud_col < 0 || cond_col < 0))
    fail(ErrorCode::kParse, "csv header must name a label column (or cloud + condition)");

  std::vector<RdCurve> curves;
  std::map<std::string, std::size_t> index;  // label -> curves slot

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      fail(ErrorCode::kParse, "wrong field count at line " + std::to_string(lineno));

    const std::string label =
        label_col >= 0 ? trim(fields[static_cast<std::size_t>(label_col)])
                       : trim(fields[static_cast<std::size_t>(cloud_col)]) + "/" +
                             trim(fields[static_cast<std::size_t>(cond_col)]);
    if (label.empty()) fail(ErrorCode::kParse, "empty label at line " + std::to_string(lineno));

    if (trim(fields[static_cast<std::size_t>(rate_col)]).empty())
      continue;  // no rate recorded for this row
    const double rate = parse_double(fields[static_cast<std::size_t>(rate_col)], lineno);
    const double psnr = parse_double(fields[static_cast<std::size_t>(psnr_col)], lineno);
    if (rate <= 0.0 || !std::isfinite(rate))
      fail(ErrorCode::kParse, "rate must be positive at line " + std::to_string(lineno));

    auto [it, inserted] = index.try_emplace(label, curves.size());
    if (inserted) curves.push_back(RdCurve{label, {}});
    curves[it->second].points.push_back({rate, psnr});
  }

  for (RdCurve& curve : curves) {
    std::sort(curve.points.begin(), curve.points.end(),
              [](const RdPoint& a, const RdPoint& b) { return a.rate_bpp < b.rate_bpp; });
    for (std::size_t i = 1; i < curve.points.size(); ++i)
      if (curve.points[i].rate_bpp == curve.points[i - 1].rate_bpp)
        fail(ErrorCode::kParse, "duplicate rate " + std::to_string(curve.points[i].rate_bpp) +
                                    " in curve '" + curve.label + "'");
  }
  return curves;
}

std::vector<RdCurve> load_rd_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return load_rd_csv(in);
}

//============================================================================
// Bjontegaard delta rate

namespace {

// log10(rate) as a function of quality, either a least-squares cubic (>= 4
// points) or a piecewise cubic Hermite interpolant (2-3 points).
class LogRateModel {
 public:
  static LogRateModel fit(std::vector<RdPoint> pts) {
    LogRateModel m;
    std::sort(pts.begin(), pts.end(),
              [](const RdPoint& a, const RdPoint& b) { return a.psnr_db < b.psnr_db; });
    m.q_.reserve(pts.size());
    m.y_.reserve(pts.size());
    for (const RdPoint& p : pts) {
      m.q_.push_back(p.psnr_db);
      m.y_.push_back(std::log10(p.rate_bpp));
    }
    if (pts.size() >= 4) {
      m.fit_cubic();
    } else {
      m.fit_hermite();
    }
    return m;
  }

  double operator()(double q) const {
    if (cubic_) {
      const double u = (q - center_) / span_;
      return coeff_[0] + u * (coeff_[1] + u * (coeff_[2] + u * coeff_[3]));
    }
    // Hermite evaluation on the segment containing q
    std::size_t seg = 0;
    while (seg + 2 < q_.size() && q > q_[seg + 1]) ++seg;
    const double h = q_[seg + 1] - q_[seg];
    const double u = (q - q_[seg]) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y_[seg] + (u3 - 2 * u2 + u) * h * slope_[seg] +
           (-2 * u3 + 3 * u2) * y_[seg + 1] + (u3 - u2) * h * slope_[seg + 1];
  }

 private:
  void fit_cubic() {
    cubic_ = true;
    const auto [lo, hi] = std::minmax_element(q_.begin(), q_.end());
    center_ = (*lo + *hi) / 2.0;
    span_ = std::max((*hi - *lo) / 2.0, 1e-9);

    // normal equations for a degree-3 least-squares fit in u = (q-c)/s
    std::array<double, 7> pow_sum{};
    std::array<double, 4> rhs{};
    for (std::size_t i = 0; i < q_.size(); ++i) {
      const double u = (q_[i] - center_) / span_;
      double up = 1.0;
      for (int k = 0; k <= 6; ++k, up *= u) pow_sum[static_cast<std::size_t>(k)] += up;
      up = 1.0;
      for (int k = 0; k <= 3; ++k, up *= u) rhs[static_cast<std::size_t>(k)] += up * y_[i];
    }
    double a[4][5];
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) a[r][c] = pow_sum[static_cast<std::size_t>(r + c)];
      a[r][4] = rhs[static_cast<std::size_t>(r)];
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < 4; ++col) {
      int pivot = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
      for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[pivot][c]);
      if (std::fabs(a[col][col]) < 1e-12)
        fail(ErrorCode::kInvalidArgument, "degenerate rd curve (singular fit)");
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
      }
    }
    for (int k = 0; k < 4; ++k) coeff_[static_cast<std::size_t>(k)] = a[k][4] / a[k][k];
  }

  void fit_hermite() {
    cubic_ = false;
    const std::size_t n = q_.size();
    for (std::size_t i = 1; i < n; ++i)
      if (q_[i] == q_[i - 1])
        fail(ErrorCode::kInvalidArgument, "duplicate quality in short rd curve");
    slope_.assign(n, 0.0);
    if (n == 2) {
      slope_[0] = slope_[1] = (y_[1] - y_[0]) / (q_[1] - q_[0]);
      return;
    }
    // monotone-preserving slopes (Fritsch-Carlson style) for 3 points
    const double h0 = q_[1] - q_[0], h1 = q_[2] - q_[1];
    const double d0 = (y_[1] - y_[0]) / h0, d1 = (y_[2] - y_[1]) / h1;
    auto endpoint = [](double h_near, double h_far, double d_near, double d_far) {
      double m = ((2 * h_near + h_far) * d_near - h_near * d_far) / (h_near + h_far);
      if (m * d_near <= 0) return 0.0;
      if (d_near * d_far < 0 && std::fabs(m) > 3 * std::fabs(d_near)) return 3 * d_near;
      return m;
    };
    slope_[0] = endpoint(h0, h1, d0, d1);
    slope_[2] = endpoint(h1, h0, d1, d0);
    if (d0 * d1 > 0) {
      const double w1 = 2 * h1 + h0, w2 = h1 + 2 * h0;
      slope_[1] = (w1 + w2) / (w1 / d0 + w2 / d1);
    }
  }

  bool cubic_ = false;
  std::vector<double> q_, y_, slope_;
  double center_ = 0.0, span_ = 1.0;
  std::array<double, 4> coeff_{};
};

std::vector<RdPoint> finite_points(const RdCurve& curve) {
  std::vector<RdPoint> pts;
  for (const RdPoint& p : curve.points)
    if (std::isfinite(p.psnr_db)) pts.push_back(p);
  return pts;
}

}  // namespace

BdRateResult bd_rate(const RdCurve& anchor, const RdCurve& test) {
  const std::vector<RdPoint> a = finite_points(anchor);
  const std::vector<RdPoint> t = finite_points(test);
  if (a.size() < 2 || t.size() < 2)
    fail(ErrorCode::kTooFewPoints, "bd-rate needs at least 2 finite points per curve");

  auto quality_range = [](const std::vector<RdPoint>& pts) {
    double lo = pts.front().psnr_db, hi = pts.front().psnr_db;
    for (const RdPoint& p : pts) {
      lo = std::min(lo, p.psnr_db);
      hi = std::max(hi, p.psnr_db);
    }
    return std::pair{lo, hi};
  };
  const auto [alo, ahi] = quality_range(a);
  const auto [tlo, thi] = quality_range(t);
  const double lo = std::max(alo, tlo);
  const double hi = std::min(ahi, thi);
  if (!(lo < hi)) fail(ErrorCode::kNoOverlap, "rd curves share no quality interval");

  const LogRateModel fa = LogRateModel::fit(a);
  const LogRateModel ft = LogRateModel::fit(t);

  // trapezoid rule over 1000 samples of the log-rate difference
  constexpr int kSamples = 1000;
  const double step = (hi - lo) / (kSamples - 1);
  double acc = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double q = lo + step * i;
    const double diff = ft(q) - fa(q);
    const double w = (i == 0 || i == kSamples - 1) ? 0.5 : 1.0;
    acc += w * diff;
  }
  const double mean_diff = acc / (kSamples - 1);

  BdRateResult result;
  result.percent = (std::pow(10.0, mean_diff) - 1.0) * 100.0;
  result.low_point_fallback = a.size() < 4 || t.size() < 4;
  return result;
}

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voxsr/geometry.hpp"

namespace voxsr {

// One rate point of an experiment: a scale factor plus the token it was
// configured with ("10:R4" or an explicit "4/3"), used in report rows and
// file names.
struct RatePointSpec {
  std::string id;
  ScaleFactor scale;
};

struct ExperimentConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> decoded;  // external mode: one per input
  enum class Mode { kSimulate, kExternal } mode = Mode::kSimulate;
  std::vector<std::string> scale_tokens;  // explicit "N/D" entries
  std::vector<std::string> ctc_tokens;    // "PREC:RID" entries
  enum class SPrime { kNone, kAuto, kExplicit } s_prime_policy = SPrime::kNone;
  int s_prime_value = 1;
  std::string out_dir;
  std::optional<std::int64_t> peak;
  std::string rates_csv;  // optional external rate log
  int jobs = 1;
};

// Plain-text "key = value" config, '#' comments, repeatable keys input /
// decoded / scale / ctc. Does not validate cross-field constraints; see
// resolve_rate_points / run_pipeline.
ExperimentConfig parse_config_file(const std::string& path);

// Applies one "key=value" override on top of a config (repeatable keys append).
void apply_config_override(ExperimentConfig& config, const std::string& assignment);

// Expands the configured scale source into concrete rate points. Exactly one
// of scale_tokens / ctc_tokens must be non-empty.
std::vector<RatePointSpec> resolve_rate_points(const ExperimentConfig& config);

struct ReportRow {
  std::string label;      // "<cloud>/<method>"
  std::string cloud;
  std::string condition;  // "<rate id>:<method>"
  std::optional<double> rate_bpp;
  double d1_psnr_db = 0.0;
  std::size_t points_in = 0;
  std::size_t points_out = 0;
};

struct PipelineResult {
  std::vector<ReportRow> rows;
  std::string report_path;
  std::string timing_path;
  std::string config_path;
};

// Runs every (input, rate point) job: simulate mode downscales per the rate
// point (with the optional s' pre-densification), then reconstructs with
// both the LUT super-resolution and the NNI baseline; external mode loads
// the decoded cloud instead of simulating the codec. Writes decoded / sr /
// nni PLYs, report.csv, timing.csv and the resolved config under out_dir.
// The report is byte-deterministic for fixed inputs; wall-clock numbers go
// to timing.csv only.
PipelineResult run_pipeline(const ExperimentConfig& config);

// Report CSV serialization (header + one line per row, lossless doubles).
std::string report_csv_header();
std::string report_csv_line(const ReportRow& row);

// Shortest round-trip decimal form of v ("inf" for infinities).
std::string format_double(double v);

}  // namespace voxsr

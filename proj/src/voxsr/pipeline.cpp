// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/pipeline.hpp"

#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "voxsr/ctc.hpp"
#include "voxsr/error.hpp"
#include "voxsr/metrics.hpp"
#include "voxsr/ply_io.hpp"
#include "voxsr/rescale.hpp"
#include "voxsr/super_resolve.hpp"

namespace voxsr {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void assign_key(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "input") {
    config.inputs.push_back(value);
  } else if (key == "decoded") {
    config.decoded.push_back(value);
  } else if (key == "mode") {
    if (value == "simulate") {
      config.mode = ExperimentConfig::Mode::kSimulate;
    } else if (value == "external") {
      config.mode = ExperimentConfig::Mode::kExternal;
    } else {
      fail(ErrorCode::kConfig, "mode must be simulate or external, got '" + value + "'");
    }
  } else if (key == "scale") {
    config.scale_tokens.push_back(value);
  } else if (key == "ctc") {
    config.ctc_tokens.push_back(value);
  } else if (key == "sprime") {
    if (value == "auto") {
      config.s_prime_policy = ExperimentConfig::SPrime::kAuto;
    } else if (value == "none") {
      config.s_prime_policy = ExperimentConfig::SPrime::kNone;
    } else {
      int v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || p != value.data() + value.size())
        fail(ErrorCode::kConfig, "sprime must be auto, none or an integer");
      config.s_prime_policy = ExperimentConfig::SPrime::kExplicit;
      config.s_prime_value = v;
    }
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "peak") {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size() || v < 1)
      fail(ErrorCode::kConfig, "peak must be a positive integer");
    config.peak = v;
  } else if (key == "rates") {
    config.rates_csv = value;
  } else if (key == "jobs") {
    int v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size() || v < 1)
      fail(ErrorCode::kConfig, "jobs must be a positive integer");
    config.jobs = v;
  } else {
    fail(ErrorCode::kConfig, "unknown config key '" + key + "'");
  }
}

std::string sanitize(const std::string& token) {
  std::string out;
  for (char c : token)
    out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_';
  return out;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// external rate log: cloud,rate_id,rate_bpp
std::map<std::pair<std::string, std::string>, double> load_rate_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open rate log '" + path + "'");
  std::map<std::pair<std::string, std::string>, double> rates;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "empty rate log");
  if (trim(line) != "cloud,rate_id,rate_bpp")
    fail(ErrorCode::kParse, "rate log header must be cloud,rate_id,rate_bpp");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string cloud, rate_id, bpp;
    if (!std::getline(row, cloud, ',') || !std::getline(row, rate_id, ',') ||
        !std::getline(row, bpp))
      fail(ErrorCode::kParse, "malformed rate log row at line " + std::to_string(lineno));
    char* end = nullptr;
    const double v = std::strtod(trim(bpp).c_str(), &end);
    if (end == trim(bpp).c_str() || v <= 0)
      fail(ErrorCode::kParse, "bad rate at line " + std::to_string(lineno));
    rates[{trim(cloud), trim(rate_id)}] = v;
  }
  return rates;
}

struct InputContext {
  std::string stem;
  VoxelCloud cloud;         // original
  VoxelCloud dense;         // after the optional s' pre-downscale
  Vec3i t{};                // translation used by the simulated codec
  int s_prime = 1;
  std::int64_t peak = 0;
  VoxelCloud external_decoded;  // external mode only
};

struct TimingRow {
  std::string label;
  std::string condition;
  double wall_ms = 0.0;
};

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config '" + path + "'");
  ExperimentConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kConfig, "expected key = value at line " + std::to_string(lineno));
    assign_key(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return config;
}

void apply_config_override(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    fail(ErrorCode::kConfig, "override must be key=value, got '" + assignment + "'");
  assign_key(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::vector<RatePointSpec> resolve_rate_points(const ExperimentConfig& config) {
  if (config.scale_tokens.empty() == config.ctc_tokens.empty())
    fail(ErrorCode::kConfig, "exactly one scale source required: scale=N/D or ctc=PREC:RID");
  std::vector<RatePointSpec> points;
  for (const std::string& token : config.scale_tokens) {
    const ScaleFactor s = ScaleFactor::parse(token);
    if (s <= ScaleFactor(1)) fail(ErrorCode::kConfig, "scale must exceed 1, got " + token);
    points.push_back({s.str(), s});
  }
  for (const std::string& token : config.ctc_tokens) {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::kConfig, "ctc token must be PREC:RID, got '" + token + "'");
    int precision = 0;
    const std::string prec = trim(token.substr(0, colon));
    auto [p, ec] = std::from_chars(prec.data(), prec.data() + prec.size(), precision);
    if (ec != std::errc{} || p != prec.data() + prec.size())
      fail(ErrorCode::kConfig, "bad ctc precision in '" + token + "'");
    points.push_back({token, ctc_scale(precision, trim(token.substr(colon + 1)))});
  }
  return points;
}

std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string report_csv_header() {
  return "label,cloud,condition,rate_bpp,d1_psnr_db,points_in,points_out";
}

std::string report_csv_line(const ReportRow& row) {
  std::string line = row.label + ',' + row.cloud + ',' + row.condition + ',';
  if (row.rate_bpp) line += format_double(*row.rate_bpp);
  line += ',' + format_double(row.d1_psnr_db) + ',' + std::to_string(row.points_in) + ',' +
          std::to_string(row.points_out);
  return line;
}

PipelineResult run_pipeline(const ExperimentConfig& config) {
  if (config.inputs.empty()) fail(ErrorCode::kConfig, "no input clouds configured");
  if (config.out_dir.empty()) fail(ErrorCode::kConfig, "no output directory configured");
  const std::vector<RatePointSpec> rate_points = resolve_rate_points(config);

  const bool external = config.mode == ExperimentConfig::Mode::kExternal;
  if (external) {
    if (config.decoded.size() != config.inputs.size())
      fail(ErrorCode::kConfig, "external mode needs one decoded cloud per input");
    if (rate_points.size() != 1)
      fail(ErrorCode::kConfig, "external mode needs exactly one rate point (the coded scale)");
  } else if (!config.decoded.empty()) {
    fail(ErrorCode::kConfig, "decoded clouds are only meaningful in external mode");
  }

  std::map<std::pair<std::string, std::string>, double> rate_log;
  if (!config.rates_csv.empty()) rate_log = load_rate_log(config.rates_csv);

  fs::create_directories(config.out_dir);

  // Per-input preparation is sequential; jobs share it read-only.
  std::vector<InputContext> ctx(config.inputs.size());
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    InputContext& c = ctx[i];
    c.stem = stem_of(config.inputs[i]);
    for (std::size_t k = 0; k < i; ++k)
      if (ctx[k].stem == c.stem)
        fail(ErrorCode::kConfig,
             "inputs share the stem '" + c.stem + "'; outputs would collide");
    c.cloud = load_ply_file(config.inputs[i]);
    if (c.cloud.empty()) fail(ErrorCode::kEmptyCloud, "input '" + config.inputs[i] + "' is empty");
    switch (config.s_prime_policy) {
      case ExperimentConfig::SPrime::kNone: c.s_prime = 1; break;
      case ExperimentConfig::SPrime::kAuto: c.s_prime = choose_s_prime(c.cloud); break;
      case ExperimentConfig::SPrime::kExplicit: c.s_prime = config.s_prime_value; break;
    }
    c.dense = c.s_prime > 1
                  ? downscale(c.cloud, ScaleFactor(c.s_prime), translation_of(c.cloud))
                  : c.cloud;
    c.t = translation_of(c.dense);
    c.peak = config.peak ? *config.peak : c.cloud.peak_value();
    if (external) c.external_decoded = load_ply_file(config.decoded[i]);
  }

  struct Job {
    std::size_t input;
    std::size_t rate;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    for (std::size_t r = 0; r < rate_points.size(); ++r) jobs.push_back({i, r});

  std::vector<ReportRow> rows(jobs.size() * 2);
  std::vector<TimingRow> timing(jobs.size() * 2);
  std::vector<std::string> job_errors(jobs.size());

  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const InputContext& c = ctx[job.input];
    const RatePointSpec& rp = rate_points[job.rate];
    const std::string tag = c.stem + "_" + sanitize(rp.id);

    const VoxelCloud decoded =
        external ? c.external_decoded : downscale(c.dense, rp.scale, c.t);
    if (decoded.empty()) fail(ErrorCode::kEmptyCloud, "decoded cloud for " + tag + " is empty");
    save_ply_file(decoded, fs::path(config.out_dir) / (tag + "_dec.ply"),
                  PlyFormat::kBinaryLittleEndian);

    using clock = std::chrono::steady_clock;
    const auto run_method = [&](const char* method, auto&& reconstruct, std::size_t slot) {
      const auto start = clock::now();
      VoxelCloud rec = reconstruct();
      if (c.s_prime > 1) rec = integer_upscale(rec, c.s_prime);
      const double wall_ms =
          std::chrono::duration<double, std::milli>(clock::now() - start).count();
      const double psnr = d1_psnr(rec, c.cloud, c.peak);
      save_ply_file(rec, fs::path(config.out_dir) / (tag + "_" + method + ".ply"),
                    PlyFormat::kBinaryLittleEndian);

      ReportRow& row = rows[slot];
      row.label = c.stem + "/" + method;
      row.cloud = c.stem;
      row.condition = rp.id + ":" + method;
      const auto it = rate_log.find({c.stem, rp.id});
      if (it != rate_log.end()) row.rate_bpp = it->second;
      row.d1_psnr_db = psnr;
      row.points_in = c.cloud.size();
      row.points_out = rec.size();
      timing[slot] = {row.label, row.condition, wall_ms};
    };

    run_method("sr", [&] { return super_resolve(decoded, rp.scale, c.t); }, j * 2);
    run_method("nni", [&] { return upscale_nni(decoded, rp.scale, c.t); }, j * 2 + 1);
  };

  const int workers = std::min<int>(config.jobs, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= jobs.size()) return;
        try {
          run_job(j);
        } catch (const std::exception& e) {
          job_errors[j] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    for (const std::string& err : job_errors)
      if (!err.empty()) fail(ErrorCode::kIo, "pipeline job failed: " + err);
  }

  PipelineResult result;
  result.rows = std::move(rows);

  // resolved configuration, for reproducibility
  result.config_path = (fs::path(config.out_dir) / "run_config.txt").string();
  {
    std::ofstream out(result.config_path);
    if (!out) fail(ErrorCode::kIo, "cannot write " + result.config_path);
    out << "mode = " << (external ? "external" : "simulate") << "\n";
    for (const std::string& p : config.inputs) out << "input = " << p << "\n";
    for (const std::string& p : config.decoded) out << "decoded = " << p << "\n";
    for (const std::string& tok : config.scale_tokens) out << "scale = " << tok << "\n";
    for (const std::string& tok : config.ctc_tokens) out << "ctc = " << tok << "\n";
    switch (config.s_prime_policy) {
      case ExperimentConfig::SPrime::kNone: out << "sprime = none\n"; break;
      case ExperimentConfig::SPrime::kAuto:
        out << "sprime = auto\n";
        for (const InputContext& c : ctx)
          out << "# chosen s' for " << c.stem << " = " << c.s_prime << "\n";
        break;
      case ExperimentConfig::SPrime::kExplicit:
        out << "sprime = " << config.s_prime_value << "\n";
        break;
    }
    if (config.peak) out << "peak = " << *config.peak << "\n";
    if (!config.rates_csv.empty()) out << "rates = " << config.rates_csv << "\n";
    out << "jobs = " << config.jobs << "\n";
    out << "out = " << config.out_dir << "\n";
  }

  result.report_path = (fs::path(config.out_dir) / "report.csv").string();
  {
    std::ofstream out(result.report_path);
    if (!out) fail(ErrorCode::kIo, "cannot write " + result.report_path);
    out << report_csv_header() << "\n";
    for (const ReportRow& row : result.rows) out << report_csv_line(row) << "\n";
  }

  result.timing_path = (fs::path(config.out_dir) / "timing.csv").string();
  {
    std::ofstream out(result.timing_path);
    if (!out) fail(ErrorCode::kIo, "cannot write " + result.timing_path);
    out << "label,condition,wall_ms\n";
    for (const TimingRow& row : timing)
      out << row.label << ',' << row.condition << ',' << format_double(row.wall_ms) << "\n";
  }

  return result;
}

}  // namespace voxsr

// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/synthetic.hpp"
#include "voxsr/error.hpp"
#include "voxsr/pipeline.hpp"
#include "voxsr/ply_io.hpp"
#include "voxsr/rd_curve.hpp"
#include "voxsr/rescale.hpp"

using namespace voxsr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("voxsr_test_" + name);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& child) const { return (path / child).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parsing and overrides") {
  TempDir dir("config");
  {
    std::ofstream cfg(dir.str("run.cfg"));
    cfg << "# experiment\n"
           "input = a.ply\n"
           "input = b.ply\n"
           "ctc = 10:R4\n"
           "ctc = 10:R6\n"
           "sprime = auto\n"
           "jobs = 2\n"
           "out = results\n";
  }
  ExperimentConfig config = parse_config_file(dir.str("run.cfg"));
  CHECK(config.inputs == std::vector<std::string>{"a.ply", "b.ply"});
  CHECK(config.ctc_tokens.size() == 2);
  CHECK(config.s_prime_policy == ExperimentConfig::SPrime::kAuto);
  CHECK(config.jobs == 2);

  apply_config_override(config, "out=elsewhere");
  CHECK(config.out_dir == "elsewhere");
  apply_config_override(config, "input=c.ply");
  CHECK(config.inputs.size() == 3);

  CHECK_THROWS_AS(apply_config_override(config, "nonsense"), Error);
  CHECK_THROWS_AS(apply_config_override(config, "bogus=1"), Error);
  CHECK_THROWS_AS(apply_config_override(config, "jobs=-2"), Error);
  CHECK_THROWS_AS(apply_config_override(config, "mode=hybrid"), Error);
}

TEST_CASE("rate point resolution enforces one scale source") {
  ExperimentConfig config;
  CHECK_THROWS_AS(resolve_rate_points(config), Error);
  config.scale_tokens = {"4/3"};
  config.ctc_tokens = {"10:R4"};
  CHECK_THROWS_AS(resolve_rate_points(config), Error);

  config.ctc_tokens.clear();
  auto points = resolve_rate_points(config);
  REQUIRE(points.size() == 1);
  CHECK(points[0].scale == ScaleFactor(4, 3));
  CHECK(points[0].id == "4/3");

  config.scale_tokens = {"1/2"};
  CHECK_THROWS_AS(resolve_rate_points(config), Error);

  config.scale_tokens.clear();
  config.ctc_tokens = {"10:R6", "11:R4"};
  points = resolve_rate_points(config);
  REQUIRE(points.size() == 2);
  CHECK(points[0].scale == ScaleFactor(16, 15));
  CHECK(points[1].scale == ScaleFactor(2));
}

TEST_CASE("simulate pipeline produces sr and nni rows with sr ahead") {
  TempDir dir("simulate");
  const auto sphere = testing::sphere_shell({40, 40, 40}, 30, 7);
  save_ply_file(sphere, dir.str("sphere.ply"), PlyFormat::kBinaryLittleEndian);

  ExperimentConfig config;
  config.inputs = {dir.str("sphere.ply")};
  config.ctc_tokens = {"10:R6"};
  config.out_dir = dir.str("out");

  const PipelineResult result = run_pipeline(config);
  REQUIRE(result.rows.size() == 2);
  const ReportRow& sr = result.rows[0];
  const ReportRow& nni = result.rows[1];
  CHECK(sr.condition == "10:R6:sr");
  CHECK(nni.condition == "10:R6:nni");
  CHECK(sr.points_in == sphere.size());
  CHECK(sr.d1_psnr_db >= nni.d1_psnr_db);
  CHECK_FALSE(sr.rate_bpp.has_value());  // no rate log configured

  CHECK(fs::exists(dir.str("out/sphere_10_R6_dec.ply")));
  CHECK(fs::exists(dir.str("out/sphere_10_R6_sr.ply")));
  CHECK(fs::exists(dir.str("out/sphere_10_R6_nni.ply")));
  CHECK(fs::exists(result.config_path));
  CHECK(fs::exists(result.timing_path));
}

TEST_CASE("external mode reproduces the simulated pipeline") {
  TempDir dir("external");
  const auto sphere = testing::sphere_shell({40, 40, 40}, 28, 7);
  save_ply_file(sphere, dir.str("sphere.ply"), PlyFormat::kBinaryLittleEndian);
  const auto decoded = downscale(sphere, ScaleFactor(4, 3), translation_of(sphere));
  save_ply_file(decoded, dir.str("decoded.ply"), PlyFormat::kBinaryLittleEndian);

  ExperimentConfig sim;
  sim.inputs = {dir.str("sphere.ply")};
  sim.scale_tokens = {"4/3"};
  sim.out_dir = dir.str("sim");
  const PipelineResult sim_result = run_pipeline(sim);

  ExperimentConfig ext = sim;
  ext.mode = ExperimentConfig::Mode::kExternal;
  ext.decoded = {dir.str("decoded.ply")};
  ext.out_dir = dir.str("ext");
  const PipelineResult ext_result = run_pipeline(ext);

  REQUIRE(sim_result.rows.size() == ext_result.rows.size());
  for (std::size_t i = 0; i < sim_result.rows.size(); ++i) {
    CHECK(sim_result.rows[i].d1_psnr_db == ext_result.rows[i].d1_psnr_db);
    CHECK(sim_result.rows[i].points_out == ext_result.rows[i].points_out);
  }
}

TEST_CASE("pipeline is deterministic and parallel-safe") {
  TempDir dir("deterministic");
  const auto a = testing::sphere_shell({32, 32, 32}, 22, 6);
  const auto b = testing::cube_shell(40);
  save_ply_file(a, dir.str("a.ply"), PlyFormat::kBinaryLittleEndian);
  save_ply_file(b, dir.str("b.ply"), PlyFormat::kBinaryLittleEndian);

  ExperimentConfig config;
  config.inputs = {dir.str("a.ply"), dir.str("b.ply")};
  config.ctc_tokens = {"10:R4", "10:R3"};
  config.out_dir = dir.str("run1");
  config.jobs = 1;
  const PipelineResult first = run_pipeline(config);

  config.out_dir = dir.str("run2");
  config.jobs = 4;
  const PipelineResult second = run_pipeline(config);

  CHECK(slurp(first.report_path) == slurp(second.report_path));
  CHECK(slurp(dir.str("run1/a_10_R4_sr.ply")) == slurp(dir.str("run2/a_10_R4_sr.ply")));
  CHECK(slurp(dir.str("run1/b_10_R3_nni.ply")) == slurp(dir.str("run2/b_10_R3_nni.ply")));
}

TEST_CASE("report csv feeds load_rd_csv and merges external rates") {
  TempDir dir("rates");
  const auto sphere = testing::sphere_shell({32, 32, 32}, 20, 6);
  save_ply_file(sphere, dir.str("sphere.ply"), PlyFormat::kBinaryLittleEndian);
  {
    std::ofstream rates(dir.str("rates.csv"));
    rates << "cloud,rate_id,rate_bpp\n"
             "sphere,10:R4,0.55\n"
             "sphere,10:R3,0.31\n";
  }

  ExperimentConfig config;
  config.inputs = {dir.str("sphere.ply")};
  config.ctc_tokens = {"10:R4", "10:R3"};
  config.rates_csv = dir.str("rates.csv");
  config.out_dir = dir.str("out");
  const PipelineResult result = run_pipeline(config);

  for (const ReportRow& row : result.rows) {
    REQUIRE(row.rate_bpp.has_value());
    CHECK((*row.rate_bpp == 0.55 || *row.rate_bpp == 0.31));
  }

  const auto curves = load_rd_csv_file(result.report_path);
  REQUIRE(curves.size() == 2);  // sphere/sr and sphere/nni
  for (const RdCurve& c : curves) {
    CHECK(c.points.size() == 2);
    CHECK(c.points[0].rate_bpp < c.points[1].rate_bpp);
  }
}

TEST_CASE("dus pipeline upscales back to the input frame") {
  TempDir dir("dus");
  const auto sparse = testing::lattice(16, 4, 6);
  save_ply_file(sparse, dir.str("lattice.ply"), PlyFormat::kBinaryLittleEndian);

  ExperimentConfig config;
  config.inputs = {dir.str("lattice.ply")};
  config.scale_tokens = {"4/3"};
  config.s_prime_policy = ExperimentConfig::SPrime::kAuto;
  config.out_dir = dir.str("out");
  const PipelineResult result = run_pipeline(config);

  REQUIRE(result.rows.size() == 2);
  const auto sr = load_ply_file(dir.str("out/lattice_4_3_sr.ply"));
  // reconstruction lives on the s' = 4 lattice scale
  CHECK(sr.max_corner().x <= 4 * 2 * (sparse.max_corner().x + 1));
  const std::string cfg = slurp(result.config_path);
  CHECK(cfg.find("sprime = auto") != std::string::npos);
  CHECK(cfg.find("= 4") != std::string::npos);
}

TEST_CASE("pipeline configuration errors") {
  TempDir dir("errors");
  const auto cloud = testing::filled_cube(8);
  save_ply_file(cloud, dir.str("cube.ply"), PlyFormat::kAscii);

  ExperimentConfig config;
  config.out_dir = dir.str("out");
  CHECK_THROWS_AS(run_pipeline(config), Error);  // no inputs

  config.inputs = {dir.str("cube.ply")};
  CHECK_THROWS_AS(run_pipeline(config), Error);  // no scale source

  config.scale_tokens = {"4/3"};
  config.ctc_tokens = {"10:R4"};
  CHECK_THROWS_AS(run_pipeline(config), Error);  // both sources

  config.ctc_tokens.clear();
  config.out_dir.clear();
  CHECK_THROWS_AS(run_pipeline(config), Error);  // no out dir

  config.out_dir = dir.str("out");
  config.mode = ExperimentConfig::Mode::kExternal;
  CHECK_THROWS_AS(run_pipeline(config), Error);  // missing decoded

  config.mode = ExperimentConfig::Mode::kSimulate;
  config.decoded = {dir.str("cube.ply")};
  CHECK_THROWS_AS(run_pipeline(config), Error);  // decoded without external

  config.decoded.clear();
  fs::create_directories(dir.path / "sub");
  save_ply_file(cloud, dir.str("sub/cube.ply"), PlyFormat::kAscii);
  config.inputs = {dir.str("cube.ply"), dir.str("sub/cube.ply")};
  CHECK_THROWS_AS(run_pipeline(config), Error);  // colliding stems
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 0.55, 1e-7, 123456.789, 64.96854819}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

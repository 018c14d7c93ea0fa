// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0
//
// voxsr command-line front end. Talks to the shared library exclusively
// through the public C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voxsr/voxsr.h"

namespace {

struct CloudHandle {
  voxsr_cloud* ptr = nullptr;
  ~CloudHandle() { voxsr_cloud_free(ptr); }
};

[[noreturn]] void die(voxsr_status status) {
  std::fprintf(stderr, "voxsr: error: %s\n", voxsr_last_error());
  std::exit(static_cast<int>(status));
}

void check(voxsr_status status) {
  if (status != VOXSR_OK) die(status);
}

// common scale selection: --scale N/D xor --ctc PREC:RID
struct ScaleOption {
  std::string scale;
  std::string ctc;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--scale", scale, "scale factor as NUM/DEN (or integer)");
    auto* b = cmd->add_option("--ctc", ctc, "CTC rate point as PREC:RID, e.g. 10:R4");
    a->excludes(b);
    b->excludes(a);
  }

  void resolve(int64_t& num, int64_t& den) const {
    if (scale.empty() == ctc.empty()) {
      std::fprintf(stderr, "voxsr: error: exactly one of --scale / --ctc is required\n");
      std::exit(static_cast<int>(VOXSR_E_CONFIG));
    }
    if (!scale.empty()) {
      const auto slash = scale.find('/');
      try {
        num = std::stoll(scale.substr(0, slash));
        den = slash == std::string::npos ? 1 : std::stoll(scale.substr(slash + 1));
      } catch (...) {
        std::fprintf(stderr, "voxsr: error: bad --scale '%s'\n", scale.c_str());
        std::exit(static_cast<int>(VOXSR_E_PARSE));
      }
      return;
    }
    const auto colon = ctc.find(':');
    int precision = 0;
    try {
      precision = std::stoi(ctc.substr(0, colon));
    } catch (...) {
      precision = 0;
    }
    if (colon == std::string::npos || precision == 0) {
      std::fprintf(stderr, "voxsr: error: bad --ctc '%s' (want PREC:RID)\n", ctc.c_str());
      std::exit(static_cast<int>(VOXSR_E_PARSE));
    }
    check(voxsr_ctc_scale(precision, ctc.substr(colon + 1).c_str(), &num, &den));
  }
};

bool parse_translate(const std::string& text, int32_t t[3]) {
  return std::sscanf(text.c_str(), "%" SCNd32 ",%" SCNd32 ",%" SCNd32, &t[0], &t[1],
                     &t[2]) == 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voxel-cloud fractional super-resolution toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(voxsr_version()));

  // ---- downscale -----------------------------------------------------
  auto* cmd_down = app.add_subcommand("downscale", "downscale a cloud by an exact rational");
  std::string down_in, down_out, down_translate;
  bool down_binary = false;
  int down_depth = -1;
  ScaleOption down_scale;
  cmd_down->add_option("input", down_in, "input PLY")->required();
  cmd_down->add_option("output", down_out, "output PLY")->required();
  down_scale.attach(cmd_down);
  cmd_down->add_option("--translate", down_translate,
                       "translation X,Y,Z (default: cloud minimum)");
  cmd_down->add_option("--depth", down_depth, "override input bit depth");
  cmd_down->add_flag("--binary", down_binary, "write binary PLY");

  // ---- upscale-nni ---------------------------------------------------
  auto* cmd_nni = app.add_subcommand("upscale-nni", "nearest-neighbour upscale baseline");
  std::string nni_in, nni_out, nni_translate;
  bool nni_binary = false;
  ScaleOption nni_scale;
  cmd_nni->add_option("input", nni_in, "input PLY")->required();
  cmd_nni->add_option("output", nni_out, "output PLY")->required();
  nni_scale.attach(cmd_nni);
  cmd_nni->add_option("--translate", nni_translate, "translation X,Y,Z (default: 0,0,0)");
  cmd_nni->add_flag("--binary", nni_binary, "write binary PLY");

  // ---- sr --------------------------------------------------------------
  auto* cmd_sr = app.add_subcommand("sr", "self-supervised super-resolution of a decoded cloud");
  std::string sr_in, sr_out, sr_translate;
  bool sr_binary = false;
  ScaleOption sr_scale;
  cmd_sr->add_option("input", sr_in, "decoded (downscaled) PLY")->required();
  cmd_sr->add_option("output", sr_out, "output PLY")->required();
  sr_scale.attach(cmd_sr);
  cmd_sr->add_option("--translate", sr_translate, "decoder translation X,Y,Z (default: 0,0,0)");
  cmd_sr->add_flag("--binary", sr_binary, "write binary PLY");

  // ---- dus-sr ----------------------------------------------------------
  auto* cmd_dus = app.add_subcommand(
      "dus-sr", "down-up-scaling pipeline for sparse clouds (simulated codec)");
  std::string dus_in, dus_out, dus_sprime = "auto";
  bool dus_binary = false;
  ScaleOption dus_scale;
  cmd_dus->add_option("input", dus_in, "original PLY")->required();
  cmd_dus->add_option("output", dus_out, "output PLY")->required();
  dus_scale.attach(cmd_dus);
  cmd_dus->add_option("--sprime", dus_sprime, "pre-densification factor: auto or a power of two");
  cmd_dus->add_flag("--binary", dus_binary, "write binary PLY");

  // ---- psnr ------------------------------------------------------------
  auto* cmd_psnr = app.add_subcommand("psnr", "point-to-point D1 PSNR between two clouds");
  std::string psnr_a, psnr_b;
  int64_t psnr_peak = 0;
  cmd_psnr->add_option("reference", psnr_a, "reference PLY")->required();
  cmd_psnr->add_option("test", psnr_b, "test PLY")->required();
  cmd_psnr->add_option("--peak", psnr_peak, "peak value (default: 2^depth - 1)");

  // ---- bdrate ----------------------------------------------------------
  auto* cmd_bd = app.add_subcommand("bdrate", "Bjontegaard delta rate between two CSV curves");
  std::string bd_csv, bd_anchor, bd_test;
  cmd_bd->add_option("csv", bd_csv, "RD CSV (label,rate_bpp,d1_psnr_db)")->required();
  cmd_bd->add_option("anchor", bd_anchor, "anchor curve label")->required();
  cmd_bd->add_option("test", bd_test, "test curve label")->required();

  // ---- pipeline ----------------------------------------------------------
  auto* cmd_pipe = app.add_subcommand("pipeline", "batch experiment driver");
  std::string pipe_config;
  std::vector<std::string> pipe_inputs, pipe_decoded, pipe_scales, pipe_ctcs, pipe_sets;
  std::string pipe_mode, pipe_sprime, pipe_out, pipe_rates;
  int64_t pipe_peak = 0;
  int pipe_jobs = 0;
  cmd_pipe->add_option("config", pipe_config, "key = value config file");
  cmd_pipe->add_option("--input", pipe_inputs, "input PLY (repeatable)");
  cmd_pipe->add_option("--decoded", pipe_decoded, "decoded PLY for external mode (repeatable)");
  cmd_pipe->add_option("--mode", pipe_mode, "simulate | external");
  cmd_pipe->add_option("--scale", pipe_scales, "explicit scale NUM/DEN (repeatable)");
  cmd_pipe->add_option("--ctc", pipe_ctcs, "CTC rate point PREC:RID (repeatable)");
  cmd_pipe->add_option("--sprime", pipe_sprime, "auto | none | power of two");
  cmd_pipe->add_option("--peak", pipe_peak, "PSNR peak override");
  cmd_pipe->add_option("--out", pipe_out, "output directory");
  cmd_pipe->add_option("--rates", pipe_rates, "external rate log CSV (cloud,rate_id,rate_bpp)");
  cmd_pipe->add_option("--jobs", pipe_jobs, "concurrent jobs");
  cmd_pipe->add_option("--set", pipe_sets, "raw key=value override (repeatable)");

  // ---- plot ------------------------------------------------------------
  auto* cmd_plot = app.add_subcommand("plot", "render RD curves from a CSV as SVG");
  std::string plot_csv, plot_svg;
  cmd_plot->add_option("csv", plot_csv, "RD CSV")->required();
  cmd_plot->add_option("svg", plot_svg, "output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  if (cmd_down->parsed()) {
    int64_t num = 0, den = 1;
    down_scale.resolve(num, den);
    CloudHandle in;
    check(voxsr_cloud_load_ply(down_in.c_str(), down_depth, &in.ptr));
    int32_t t[3];
    const int32_t* tp = nullptr;
    if (!down_translate.empty()) {
      if (!parse_translate(down_translate, t)) {
        std::fprintf(stderr, "voxsr: error: bad --translate '%s'\n", down_translate.c_str());
        return VOXSR_E_PARSE;
      }
      tp = t;
    } else {
      check(voxsr_translation_of(in.ptr, t));
      tp = t;
    }
    CloudHandle out;
    check(voxsr_downscale(in.ptr, num, den, tp, &out.ptr));
    check(voxsr_cloud_save_ply(out.ptr, down_out.c_str(), down_binary ? 1 : 0));
    std::printf("scale=%" PRId64 "/%" PRId64 "\n", num, den);
    std::printf("translation=%d,%d,%d\n", t[0], t[1], t[2]);
    std::printf("points_in=%zu\npoints_out=%zu\n", voxsr_cloud_size(in.ptr),
                voxsr_cloud_size(out.ptr));
    return 0;
  }

  if (cmd_nni->parsed() || cmd_sr->parsed()) {
    const bool is_sr = cmd_sr->parsed();
    const std::string& path_in = is_sr ? sr_in : nni_in;
    const std::string& path_out = is_sr ? sr_out : nni_out;
    const std::string& translate = is_sr ? sr_translate : nni_translate;
    const bool binary = is_sr ? sr_binary : nni_binary;
    int64_t num = 0, den = 1;
    (is_sr ? sr_scale : nni_scale).resolve(num, den);

    CloudHandle in;
    check(voxsr_cloud_load_ply(path_in.c_str(), -1, &in.ptr));
    int32_t t[3] = {0, 0, 0};
    if (!translate.empty() && !parse_translate(translate, t)) {
      std::fprintf(stderr, "voxsr: error: bad --translate '%s'\n", translate.c_str());
      return VOXSR_E_PARSE;
    }
    CloudHandle out;
    check(is_sr ? voxsr_super_resolve(in.ptr, num, den, t, &out.ptr)
                : voxsr_upscale_nni(in.ptr, num, den, t, &out.ptr));
    check(voxsr_cloud_save_ply(out.ptr, path_out.c_str(), binary ? 1 : 0));
    std::printf("points_in=%zu\npoints_out=%zu\n", voxsr_cloud_size(in.ptr),
                voxsr_cloud_size(out.ptr));
    return 0;
  }

  if (cmd_dus->parsed()) {
    int64_t num = 0, den = 1;
    dus_scale.resolve(num, den);
    CloudHandle in;
    check(voxsr_cloud_load_ply(dus_in.c_str(), -1, &in.ptr));
    int32_t s_prime = 1;
    if (dus_sprime == "auto") {
      check(voxsr_choose_s_prime(in.ptr, &s_prime));
    } else {
      try {
        s_prime = std::stoi(dus_sprime);
      } catch (...) {
        std::fprintf(stderr, "voxsr: error: bad --sprime '%s'\n", dus_sprime.c_str());
        return VOXSR_E_PARSE;
      }
    }
    CloudHandle out;
    check(voxsr_dus_super_resolve(in.ptr, num, den, s_prime, &out.ptr));
    check(voxsr_cloud_save_ply(out.ptr, dus_out.c_str(), dus_binary ? 1 : 0));
    std::printf("sprime=%d\n", s_prime);
    std::printf("points_in=%zu\npoints_out=%zu\n", voxsr_cloud_size(in.ptr),
                voxsr_cloud_size(out.ptr));
    return 0;
  }

  if (cmd_psnr->parsed()) {
    CloudHandle a, b;
    check(voxsr_cloud_load_ply(psnr_a.c_str(), -1, &a.ptr));
    check(voxsr_cloud_load_ply(psnr_b.c_str(), -1, &b.ptr));
    double fwd = 0, bwd = 0, psnr = 0;
    check(voxsr_directional_mse(a.ptr, b.ptr, &fwd));
    check(voxsr_directional_mse(b.ptr, a.ptr, &bwd));
    check(voxsr_d1_psnr(a.ptr, b.ptr, psnr_peak, &psnr));
    std::printf("mse_forward=%.9g\n", fwd);
    std::printf("mse_backward=%.9g\n", bwd);
    std::printf("mse_symmetric=%.9g\n", fwd > bwd ? fwd : bwd);
    std::printf("d1_psnr_db=%.9g\n", psnr);
    return 0;
  }

  if (cmd_bd->parsed()) {
    double percent = 0;
    int fallback = 0;
    check(voxsr_bd_rate_csv(bd_csv.c_str(), bd_anchor.c_str(), bd_test.c_str(), &percent,
                            &fallback));
    std::printf("bd_rate_percent=%.6f\n", percent);
    if (fallback) std::printf("warning=low_point_fallback\n");
    return 0;
  }

  if (cmd_pipe->parsed()) {
    std::vector<std::string> overrides;
    for (const auto& v : pipe_inputs) overrides.push_back("input=" + v);
    for (const auto& v : pipe_decoded) overrides.push_back("decoded=" + v);
    if (!pipe_mode.empty()) overrides.push_back("mode=" + pipe_mode);
    for (const auto& v : pipe_scales) overrides.push_back("scale=" + v);
    for (const auto& v : pipe_ctcs) overrides.push_back("ctc=" + v);
    if (!pipe_sprime.empty()) overrides.push_back("sprime=" + pipe_sprime);
    if (pipe_peak > 0) overrides.push_back("peak=" + std::to_string(pipe_peak));
    if (!pipe_out.empty()) overrides.push_back("out=" + pipe_out);
    if (!pipe_rates.empty()) overrides.push_back("rates=" + pipe_rates);
    if (pipe_jobs > 0) overrides.push_back("jobs=" + std::to_string(pipe_jobs));
    for (const auto& v : pipe_sets) overrides.push_back(v);

    std::vector<const char*> raw;
    raw.reserve(overrides.size());
    for (const auto& s : overrides) raw.push_back(s.c_str());
    check(voxsr_pipeline_run(pipe_config.empty() ? nullptr : pipe_config.c_str(),
                             raw.data(), raw.size()));
    std::printf("report=%s/report.csv\n", pipe_out.empty() ? "<out>" : pipe_out.c_str());
    return 0;
  }

  if (cmd_plot->parsed()) {
    check(voxsr_plot_rd_csv(plot_csv.c_str(), plot_svg.c_str()));
    return 0;
  }

  return 0;
}

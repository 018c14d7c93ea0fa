// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/voxsr.h"

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "voxsr/ctc.hpp"
#include "voxsr/error.hpp"
#include "voxsr/geometry.hpp"
#include "voxsr/metrics.hpp"
#include "voxsr/pipeline.hpp"
#include "voxsr/ply_io.hpp"
#include "voxsr/rd_curve.hpp"
#include "voxsr/rescale.hpp"
#include "voxsr/sr_lut.hpp"
#include "voxsr/super_resolve.hpp"
#include "voxsr/svg_plot.hpp"

struct voxsr_cloud {
  voxsr::VoxelCloud impl;
};

struct voxsr_lut {
  voxsr::OccupancyLut impl;
};

namespace {

thread_local std::string g_last_error;

voxsr_status status_of(voxsr::ErrorCode code) {
  switch (code) {
    case voxsr::ErrorCode::kInvalidArgument: return VOXSR_E_INVALID_ARGUMENT;
    case voxsr::ErrorCode::kParse: return VOXSR_E_PARSE;
    case voxsr::ErrorCode::kIo: return VOXSR_E_IO;
    case voxsr::ErrorCode::kEmptyCloud: return VOXSR_E_EMPTY_CLOUD;
    case voxsr::ErrorCode::kOverflow: return VOXSR_E_OVERFLOW;
    case voxsr::ErrorCode::kScaleMismatch: return VOXSR_E_SCALE_MISMATCH;
    case voxsr::ErrorCode::kNoOverlap: return VOXSR_E_NO_OVERLAP;
    case voxsr::ErrorCode::kTooFewPoints: return VOXSR_E_TOO_FEW_POINTS;
    case voxsr::ErrorCode::kConfig: return VOXSR_E_CONFIG;
  }
  return VOXSR_E_UNKNOWN;
}

template <typename Fn>
voxsr_status wrap(Fn&& fn) {
  try {
    fn();
    return VOXSR_OK;
  } catch (const voxsr::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VOXSR_E_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return VOXSR_E_UNKNOWN;
  }
}

void require(bool ok, const char* what) {
  if (!ok) voxsr::fail(voxsr::ErrorCode::kInvalidArgument, what);
}

voxsr::Vec3i translation_or(const int32_t t[3], voxsr::Vec3i fallback) {
  if (t == nullptr) return fallback;
  return {t[0], t[1], t[2]};
}

}  // namespace

extern "C" {

const char* voxsr_version(void) { return "0.1.0"; }

const char* voxsr_last_error(void) { return g_last_error.c_str(); }

//============================================================================
// clouds

voxsr_status voxsr_cloud_from_points(const int32_t* xyz, size_t count, int depth,
                                     voxsr_cloud** out) {
  return wrap([&] {
    require(out != nullptr && (count == 0 || xyz != nullptr), "null argument");
    std::vector<voxsr::Vec3i> points;
    points.reserve(count);
    for (size_t i = 0; i < count; ++i)
      points.push_back({xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]});
    auto cloud = voxsr::VoxelCloud::from_points(
        std::move(points), depth < 0 ? std::nullopt : std::optional<int>(depth));
    *out = new voxsr_cloud{std::move(cloud)};
  });
}

voxsr_status voxsr_cloud_load_ply(const char* path, int depth, voxsr_cloud** out) {
  return wrap([&] {
    require(path != nullptr && out != nullptr, "null argument");
    auto cloud = voxsr::load_ply_file(
        path, depth < 0 ? std::nullopt : std::optional<int>(depth));
    *out = new voxsr_cloud{std::move(cloud)};
  });
}

voxsr_status voxsr_cloud_save_ply(const voxsr_cloud* cloud, const char* path, int binary) {
  return wrap([&] {
    require(cloud != nullptr && path != nullptr, "null argument");
    voxsr::save_ply_file(cloud->impl, path,
                         binary ? voxsr::PlyFormat::kBinaryLittleEndian
                                : voxsr::PlyFormat::kAscii);
  });
}

void voxsr_cloud_free(voxsr_cloud* cloud) { delete cloud; }

size_t voxsr_cloud_size(const voxsr_cloud* cloud) {
  return cloud == nullptr ? 0 : cloud->impl.size();
}

int voxsr_cloud_depth(const voxsr_cloud* cloud) {
  return cloud == nullptr ? 0 : cloud->impl.depth();
}

voxsr_status voxsr_cloud_points(const voxsr_cloud* cloud, int32_t* xyz) {
  return wrap([&] {
    require(cloud != nullptr && (xyz != nullptr || cloud->impl.empty()), "null argument");
    size_t i = 0;
    for (const voxsr::Vec3i& p : cloud->impl.points()) {
      xyz[i++] = p.x;
      xyz[i++] = p.y;
      xyz[i++] = p.z;
    }
  });
}

int voxsr_cloud_contains(const voxsr_cloud* cloud, int32_t x, int32_t y, int32_t z) {
  if (cloud == nullptr) return 0;
  return cloud->impl.contains({x, y, z}) ? 1 : 0;
}

voxsr_status voxsr_translation_of(const voxsr_cloud* cloud, int32_t t[3]) {
  return wrap([&] {
    require(cloud != nullptr && t != nullptr, "null argument");
    const voxsr::Vec3i m = voxsr::translation_of(cloud->impl);
    t[0] = m.x;
    t[1] = m.y;
    t[2] = m.z;
  });
}

//============================================================================
// coordinate transforms

voxsr_status voxsr_downscale(const voxsr_cloud* cloud, int64_t num, int64_t den,
                             const int32_t t[3], voxsr_cloud** out) {
  return wrap([&] {
    require(cloud != nullptr && out != nullptr, "null argument");
    const voxsr::ScaleFactor s(num, den);
    const voxsr::Vec3i translation =
        t != nullptr ? voxsr::Vec3i{t[0], t[1], t[2]} : voxsr::translation_of(cloud->impl);
    *out = new voxsr_cloud{voxsr::downscale(cloud->impl, s, translation)};
  });
}

voxsr_status voxsr_upscale_nni(const voxsr_cloud* cloud, int64_t num, int64_t den,
                               const int32_t t[3], voxsr_cloud** out) {
  return wrap([&] {
    require(cloud != nullptr && out != nullptr, "null argument");
    *out = new voxsr_cloud{voxsr::upscale_nni(cloud->impl, voxsr::ScaleFactor(num, den),
                                              translation_or(t, {0, 0, 0}))};
  });
}

voxsr_status voxsr_integer_upscale(const voxsr_cloud* cloud, int32_t k, voxsr_cloud** out) {
  return wrap([&] {
    require(cloud != nullptr && out != nullptr, "null argument");
    *out = new voxsr_cloud{voxsr::integer_upscale(cloud->impl, k)};
  });
}

voxsr_status voxsr_children_of(const int32_t parent[3], int64_t num, int64_t den,
                               const int32_t t[3], int32_t* xyz, size_t* count) {
  return wrap([&] {
    require(parent != nullptr && xyz != nullptr && count != nullptr, "null argument");
    const auto children = voxsr::children_of({parent[0], parent[1], parent[2]},
                                             voxsr::ScaleFactor(num, den),
                                             translation_or(t, {0, 0, 0}));
    require(children.size() <= *count, "children buffer too small");
    size_t i = 0;
    for (const voxsr::Vec3i& c : children) {
      xyz[i++] = c.x;
      xyz[i++] = c.y;
      xyz[i++] = c.z;
    }
    *count = children.size();
  });
}

//============================================================================
// super-resolution

voxsr_status voxsr_build_lut(const voxsr_cloud* decoded, int64_t num, int64_t den,
                             voxsr_lut** out) {
  return wrap([&] {
    require(decoded != nullptr && out != nullptr, "null argument");
    *out = new voxsr_lut{voxsr::build_lut(decoded->impl, voxsr::ScaleFactor(num, den))};
  });
}

void voxsr_lut_free(voxsr_lut* lut) { delete lut; }

voxsr_status voxsr_lut_scale(const voxsr_lut* lut, int64_t* num, int64_t* den) {
  return wrap([&] {
    require(lut != nullptr && num != nullptr && den != nullptr, "null argument");
    *num = lut->impl.scale().num();
    *den = lut->impl.scale().den();
  });
}

size_t voxsr_lut_entry_count(const voxsr_lut* lut) {
  return lut == nullptr ? 0 : lut->impl.entry_count();
}

voxsr_status voxsr_lut_save_csv(const voxsr_lut* lut, const char* path) {
  return wrap([&] {
    require(lut != nullptr && path != nullptr, "null argument");
    std::ofstream out(path);
    if (!out) voxsr::fail(voxsr::ErrorCode::kIo, std::string("cannot open '") + path + "'");
    lut->impl.save_csv(out);
  });
}

voxsr_status voxsr_lut_load_csv(const char* path, voxsr_lut** out) {
  return wrap([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::ifstream in(path);
    if (!in) voxsr::fail(voxsr::ErrorCode::kIo, std::string("cannot open '") + path + "'");
    *out = new voxsr_lut{voxsr::OccupancyLut::load_csv(in)};
  });
}

voxsr_status voxsr_apply_sr(const voxsr_cloud* decoded, int64_t num, int64_t den,
                            const int32_t t[3], const voxsr_lut* lut, voxsr_cloud** out) {
  return wrap([&] {
    require(decoded != nullptr && lut != nullptr && out != nullptr, "null argument");
    *out = new voxsr_cloud{voxsr::apply_sr(decoded->impl, voxsr::ScaleFactor(num, den),
                                           translation_or(t, {0, 0, 0}), lut->impl)};
  });
}

voxsr_status voxsr_super_resolve(const voxsr_cloud* decoded, int64_t num, int64_t den,
                                 const int32_t t[3], voxsr_cloud** out) {
  return wrap([&] {
    require(decoded != nullptr && out != nullptr, "null argument");
    *out = new voxsr_cloud{voxsr::super_resolve(decoded->impl, voxsr::ScaleFactor(num, den),
                                                translation_or(t, {0, 0, 0}))};
  });
}

voxsr_status voxsr_choose_s_prime(const voxsr_cloud* cloud, int32_t* out) {
  return wrap([&] {
    require(cloud != nullptr && out != nullptr, "null argument");
    *out = voxsr::choose_s_prime(cloud->impl);
  });
}

voxsr_status voxsr_dus_super_resolve(const voxsr_cloud* cloud, int64_t num, int64_t den,
                                     int32_t s_prime, voxsr_cloud** out) {
  return wrap([&] {
    require(cloud != nullptr && out != nullptr, "null argument");
    *out = new voxsr_cloud{
        voxsr::dus_super_resolve(cloud->impl, voxsr::ScaleFactor(num, den), s_prime)};
  });
}

//============================================================================
// metrics

voxsr_status voxsr_directional_mse(const voxsr_cloud* a, const voxsr_cloud* b, double* out) {
  return wrap([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = voxsr::directional_mse(a->impl, b->impl);
  });
}

voxsr_status voxsr_d1_psnr(const voxsr_cloud* a, const voxsr_cloud* b, int64_t peak,
                           double* out) {
  return wrap([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    const int64_t effective = peak > 0 ? peak : voxsr::default_peak(a->impl, b->impl);
    *out = voxsr::d1_psnr(a->impl, b->impl, effective);
  });
}

voxsr_status voxsr_ctc_scale(int precision, const char* rate_id, int64_t* num,
                             int64_t* den) {
  return wrap([&] {
    require(rate_id != nullptr && num != nullptr && den != nullptr, "null argument");
    const voxsr::ScaleFactor s = voxsr::ctc_scale(precision, rate_id);
    *num = s.num();
    *den = s.den();
  });
}

voxsr_status voxsr_bd_rate_csv(const char* csv_path, const char* anchor_label,
                               const char* test_label, double* out_percent, int* fallback) {
  return wrap([&] {
    require(csv_path != nullptr && anchor_label != nullptr && test_label != nullptr &&
                out_percent != nullptr,
            "null argument");
    const auto curves = voxsr::load_rd_csv_file(csv_path);
    const voxsr::RdCurve* anchor = nullptr;
    const voxsr::RdCurve* test = nullptr;
    for (const voxsr::RdCurve& c : curves) {
      if (c.label == anchor_label) anchor = &c;
      if (c.label == test_label) test = &c;
    }
    if (anchor == nullptr)
      voxsr::fail(voxsr::ErrorCode::kInvalidArgument,
                  std::string("no curve labelled '") + anchor_label + "'");
    if (test == nullptr)
      voxsr::fail(voxsr::ErrorCode::kInvalidArgument,
                  std::string("no curve labelled '") + test_label + "'");
    const voxsr::BdRateResult r = voxsr::bd_rate(*anchor, *test);
    *out_percent = r.percent;
    if (fallback != nullptr) *fallback = r.low_point_fallback ? 1 : 0;
  });
}

voxsr_status voxsr_plot_rd_csv(const char* csv_path, const char* svg_path) {
  return wrap([&] {
    require(csv_path != nullptr && svg_path != nullptr, "null argument");
    const auto curves = voxsr::load_rd_csv_file(csv_path);
    std::ofstream out(svg_path);
    if (!out)
      voxsr::fail(voxsr::ErrorCode::kIo, std::string("cannot open '") + svg_path + "'");
    voxsr::emit_plot(curves, out);
  });
}

//============================================================================
// pipeline

voxsr_status voxsr_pipeline_run(const char* config_path, const char* const* overrides,
                                size_t override_count) {
  return wrap([&] {
    require(override_count == 0 || overrides != nullptr, "null argument");
    voxsr::ExperimentConfig config;
    if (config_path != nullptr) config = voxsr::parse_config_file(config_path);
    for (size_t i = 0; i < override_count; ++i) {
      require(overrides[i] != nullptr, "null override");
      voxsr::apply_config_override(config, overrides[i]);
    }
    voxsr::run_pipeline(config);
  });
}

}  // extern "C"

/* Copyright (c) the voxsr project authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * voxsr - lossy-downscaled voxel cloud post-processing by self-supervised
 * fractional super-resolution, with D1 PSNR / BD-rate evaluation tooling.
 *
 * C API over the C++ core. All objects are opaque handles; every fallible
 * function returns VOXSR_OK (0) or a nonzero voxsr_status, with a
 * human-readable detail available from voxsr_last_error() on the calling
 * thread. Handles returned through out-parameters are owned by the caller
 * and released with the matching *_free function.
 *
 * Conventions:
 *   - a scale factor is an exact rational num/den > 1
 *   - a translation is an int32_t[3]; NULL selects the documented default
 *   - cloud coordinates are non-negative voxel indices of at most 24 bits
 */

#ifndef VOXSR_H_
#define VOXSR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define VOXSR_API __declspec(dllexport)
#else
#  define VOXSR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum voxsr_status {
  VOXSR_OK = 0,
  VOXSR_E_INVALID_ARGUMENT = 1,
  VOXSR_E_PARSE = 2,
  VOXSR_E_IO = 3,
  VOXSR_E_EMPTY_CLOUD = 4,
  VOXSR_E_OVERFLOW = 5,
  VOXSR_E_SCALE_MISMATCH = 6,
  VOXSR_E_NO_OVERLAP = 7,
  VOXSR_E_TOO_FEW_POINTS = 8,
  VOXSR_E_CONFIG = 9,
  VOXSR_E_UNKNOWN = 127
} voxsr_status;

typedef struct voxsr_cloud voxsr_cloud; /* deduplicated voxel set + bit depth */
typedef struct voxsr_lut voxsr_lut;     /* neighbourhood -> children-occupancy table */

/* Library version string, e.g. "0.1.0". */
VOXSR_API const char* voxsr_version(void);

/* Detail message of the last failure on this thread. Never NULL. */
VOXSR_API const char* voxsr_last_error(void);

/*---------------------------------------------------------------------------
 * clouds
 */

/* Builds a cloud from count (x,y,z) triples; duplicates are removed.
 * depth < 0 infers the smallest depth covering the data. */
VOXSR_API voxsr_status voxsr_cloud_from_points(const int32_t* xyz, size_t count,
                                               int depth, voxsr_cloud** out);

/* Reads a PLY file (ascii or binary little-endian, vertex x/y/z of any
 * numeric type). depth < 0: use the file's depth comment or infer. */
VOXSR_API voxsr_status voxsr_cloud_load_ply(const char* path, int depth,
                                            voxsr_cloud** out);

/* Writes ascii (binary = 0) or binary little-endian (binary != 0) PLY. */
VOXSR_API voxsr_status voxsr_cloud_save_ply(const voxsr_cloud* cloud, const char* path,
                                            int binary);

VOXSR_API void voxsr_cloud_free(voxsr_cloud* cloud);

VOXSR_API size_t voxsr_cloud_size(const voxsr_cloud* cloud);
VOXSR_API int voxsr_cloud_depth(const voxsr_cloud* cloud);

/* Copies points (sorted lexicographically) into xyz, which must hold
 * 3 * voxsr_cloud_size() values. */
VOXSR_API voxsr_status voxsr_cloud_points(const voxsr_cloud* cloud, int32_t* xyz);

/* 1 if (x,y,z) is occupied, else 0. */
VOXSR_API int voxsr_cloud_contains(const voxsr_cloud* cloud, int32_t x, int32_t y,
                                   int32_t z);

/* Componentwise minimum of a non-empty cloud. */
VOXSR_API voxsr_status voxsr_translation_of(const voxsr_cloud* cloud, int32_t t[3]);

/*---------------------------------------------------------------------------
 * coordinate transforms
 *
 * downscale maps v to round((v - t)/s) per component (round half up, exact
 * rational arithmetic); children_of enumerates the exact preimage of one
 * downscaled coordinate; upscale_nni maps p to round(s*p) + t.
 */

/* t == NULL uses the cloud minimum. */
VOXSR_API voxsr_status voxsr_downscale(const voxsr_cloud* cloud, int64_t num, int64_t den,
                                       const int32_t t[3], voxsr_cloud** out);

/* t == NULL uses (0,0,0). */
VOXSR_API voxsr_status voxsr_upscale_nni(const voxsr_cloud* cloud, int64_t num,
                                         int64_t den, const int32_t t[3],
                                         voxsr_cloud** out);

/* Multiplies every coordinate by k, a power of two >= 1. */
VOXSR_API voxsr_status voxsr_integer_upscale(const voxsr_cloud* cloud, int32_t k,
                                             voxsr_cloud** out);

/* Children of one parent coordinate: 1 to 8 triples for 1 < s <= 2, written
 * to xyz (capacity *count triples); *count receives the number written.
 * t == NULL uses (0,0,0). */
VOXSR_API voxsr_status voxsr_children_of(const int32_t parent[3], int64_t num, int64_t den,
                                         const int32_t t[3], int32_t* xyz, size_t* count);

/*---------------------------------------------------------------------------
 * fractional super-resolution
 */

/* Trains an occupancy LUT on the cloud itself; requires 1 < num/den <= 2. */
VOXSR_API voxsr_status voxsr_build_lut(const voxsr_cloud* decoded, int64_t num,
                                       int64_t den, voxsr_lut** out);

VOXSR_API void voxsr_lut_free(voxsr_lut* lut);
VOXSR_API voxsr_status voxsr_lut_scale(const voxsr_lut* lut, int64_t* num, int64_t* den);
VOXSR_API size_t voxsr_lut_entry_count(const voxsr_lut* lut);

/* Debug dump / reload of the counter table ("code,slot,occupied,total"). */
VOXSR_API voxsr_status voxsr_lut_save_csv(const voxsr_lut* lut, const char* path);
VOXSR_API voxsr_status voxsr_lut_load_csv(const char* path, voxsr_lut** out);

/* One super-resolution pass with a prebuilt LUT (scales must match).
 * t == NULL uses (0,0,0). */
VOXSR_API voxsr_status voxsr_apply_sr(const voxsr_cloud* decoded, int64_t num, int64_t den,
                                      const int32_t t[3], const voxsr_lut* lut,
                                      voxsr_cloud** out);

/* Full reconstruction for any s > 1: successive passes of factor 2 with a
 * fractional residue last, each trained on its own input.
 * t == NULL uses (0,0,0). */
VOXSR_API voxsr_status voxsr_super_resolve(const voxsr_cloud* decoded, int64_t num,
                                           int64_t den, const int32_t t[3],
                                           voxsr_cloud** out);

/* Highest power of two (<= 2048) whose downscale keeps >= 95% of the points
 * distinct; 1 if none does. */
VOXSR_API voxsr_status voxsr_choose_s_prime(const voxsr_cloud* cloud, int32_t* out);

/* Down-up-scaling pipeline for sparse clouds: pre-downscale by s_prime,
 * simulate the codec at num/den, super-resolve, re-upscale by s_prime. */
VOXSR_API voxsr_status voxsr_dus_super_resolve(const voxsr_cloud* cloud, int64_t num,
                                               int64_t den, int32_t s_prime,
                                               voxsr_cloud** out);

/*---------------------------------------------------------------------------
 * metrics
 */

/* Mean squared distance from each point of a to its nearest point of b. */
VOXSR_API voxsr_status voxsr_directional_mse(const voxsr_cloud* a, const voxsr_cloud* b,
                                             double* out);

/* Point-to-point PSNR 10*log10(3*peak^2 / max(mse(a,b), mse(b,a))); +inf for
 * identical clouds. peak <= 0 selects 2^depth - 1 of the deeper cloud. */
VOXSR_API voxsr_status voxsr_d1_psnr(const voxsr_cloud* a, const voxsr_cloud* b,
                                     int64_t peak, double* out);

/* Scale factor of a common-test-conditions cell: precision 10 or 11,
 * rate_id "R1".."R6". The result is the inverse of the cell's
 * positionQuantizationScale. */
VOXSR_API voxsr_status voxsr_ctc_scale(int precision, const char* rate_id, int64_t* num,
                                       int64_t* den);

/* Bjontegaard delta rate (percent) between two labelled curves of an RD CSV
 * (header label,rate_bpp,d1_psnr_db; report.csv also works). fallback, if
 * non-NULL, is set to 1 when a curve had fewer than 4 usable points. */
VOXSR_API voxsr_status voxsr_bd_rate_csv(const char* csv_path, const char* anchor_label,
                                         const char* test_label, double* out_percent,
                                         int* fallback);

/* Renders every curve of an RD CSV into an SVG file. */
VOXSR_API voxsr_status voxsr_plot_rd_csv(const char* csv_path, const char* svg_path);

/*---------------------------------------------------------------------------
 * batch pipeline
 *
 * Runs the experiment described by a "key = value" config file plus
 * "key=value" overrides (applied in order; config_path may be NULL to
 * configure by overrides alone). Keys: input, decoded, mode, scale, ctc,
 * sprime, out, peak, rates, jobs. Writes decoded/sr/nni PLYs, report.csv,
 * timing.csv and run_config.txt under the output directory.
 */
VOXSR_API voxsr_status voxsr_pipeline_run(const char* config_path,
                                          const char* const* overrides,
                                          size_t override_count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VOXSR_H_ */

#ifndef FISHEYE_H
#define FISHEYE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define FISHEYE_MODE_SIMPLE 0

#define FISHEYE_MODE_MODIFIED 1

#define FISHEYE_MODE_FULL 2

#define FISHEYE_INTERP_NEAREST 0

#define FISHEYE_INTERP_BILINEAR 1

#define FISHEYE_INTERP_BICUBIC 2

/*
 Result code of every fallible call.
 */
typedef enum FisheyeStatus {
  FISHEYE_STATUS_OK = 0,
  /*
   A required pointer was null.
   */
  FISHEYE_STATUS_NULL_POINTER = 1,
  /*
   Invalid argument (bad enum value, size mismatch, bad UTF-8 path).
   */
  FISHEYE_STATUS_ARGUMENT = 2,
  /*
   Value outside a function's mathematical domain.
   */
  FISHEYE_STATUS_DOMAIN = 3,
  /*
   Inconsistent warp configuration.
   */
  FISHEYE_STATUS_CONFIG = 4,
  /*
   Malformed file contents.
   */
  FISHEYE_STATUS_FORMAT = 5,
  FISHEYE_STATUS_IO = 6,
  FISHEYE_STATUS_DETECTION = 7,
  /*
   A Rust panic was caught; the library state is unaffected.
   */
  FISHEYE_STATUS_PANIC = 8,
} FisheyeStatus;

/*
 Opaque lookup table.
 */
typedef struct FisheyeLut FisheyeLut;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Static description of a status code (taken as a plain integer so any
 value is safe to pass). Never null.
 */
const char *fisheye_status_str(int32_t status);

/*
 Message of the last failed call on this thread, or an empty string.
 Valid until the next call into this library from the same thread.
 */
const char *fisheye_last_error(void);

/*
 Maps output-plane point `(x, y)` (pixels, origin at the image center) to
 the source plane.

 # Safety
 `sx` and `sy` must be valid for writes.
 */
enum FisheyeStatus fisheye_map_point(double big_r0,
                                     uint32_t mode,
                                     double x,
                                     double y,
                                     double *sx,
                                     double *sy);

/*
 Angle of view in degrees of a simple-mode canvas of radius `ratio · R₀`.

 # Safety
 `deg` must be valid for writes.
 */
enum FisheyeStatus fisheye_fov(double ratio, double *deg);

/*
 Builds an `out_width × out_height` table for a `src_width × src_height`
 source and stores a new handle in `*out`.

 # Safety
 `out` must be valid for writes.
 */
enum FisheyeStatus fisheye_lut_build(double big_r0,
                                     uint32_t mode,
                                     size_t out_width,
                                     size_t out_height,
                                     size_t src_width,
                                     size_t src_height,
                                     struct FisheyeLut **out);

/*
 Reads a table written by [`fisheye_lut_save`] or the `fisheye` tool.

 # Safety
 `path` must be a valid NUL-terminated string; `out` valid for writes.
 */
enum FisheyeStatus fisheye_lut_load(const char *path, struct FisheyeLut **out);

/*
 # Safety
 `lut` must be a live handle; `path` a valid NUL-terminated string.
 */
enum FisheyeStatus fisheye_lut_save(const struct FisheyeLut *lut, const char *path);

/*
 Releases a handle. Null is ignored.

 # Safety
 `lut` must be null or a handle not yet freed.
 */
void fisheye_lut_free(struct FisheyeLut *lut);

/*
 Table width, or 0 for a null handle.

 # Safety
 `lut` must be null or a live handle.
 */
size_t fisheye_lut_width(const struct FisheyeLut *lut);

/*
 Table height, or 0 for a null handle.

 # Safety
 `lut` must be null or a live handle.
 */
size_t fisheye_lut_height(const struct FisheyeLut *lut);

/*
 Source coordinate of output pixel `(i, j)`. Out-of-range pixels yield
 NaN in both components.

 # Safety
 `lut` must be a live handle; `sx` and `sy` valid for writes.
 */
enum FisheyeStatus fisheye_lut_get(const struct FisheyeLut *lut,
                                   size_t i,
                                   size_t j,
                                   float *sx,
                                   float *sy);

/*
 Resamples an 8-bit row-major source (`channels` 1 or 3, rows tightly
 packed) through `lut` into `dst`, which must hold exactly
 `lut width × lut height × channels` bytes.

 # Safety
 `lut` must be a live handle; `src` readable for
 `src_width × src_height × channels` bytes; `dst` writable for `dst_len`
 bytes and not overlapping `src`.
 */
enum FisheyeStatus fisheye_remap(const struct FisheyeLut *lut,
                                 const uint8_t *src,
                                 size_t src_width,
                                 size_t src_height,
                                 size_t channels,
                                 uint32_t interp,
                                 uint8_t *dst,
                                 size_t dst_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FISHEYE_H */

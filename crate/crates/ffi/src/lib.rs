//! C ABI over `fisheye-core`.
//!
//! Every function returns a [`FisheyeStatus`] (or a plain value for the
//! infallible accessors) and never unwinds across the boundary. Lookup
//! tables are opaque [`FisheyeLut`] handles owned by the caller and released
//! with [`fisheye_lut_free`]. After a failure, [`fisheye_last_error`] holds a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use fisheye_core::model::{fov_of_canvas, PlanePoint};
use fisheye_core::warp::{build_lut, remap};
use fisheye_core::{CameraModel, Error, ImageBuffer, Interpolation, Lut, Mode, WarpConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FisheyeStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Invalid argument (bad enum value, size mismatch, bad UTF-8 path).
    Argument = 2,
    /// Value outside a function's mathematical domain.
    Domain = 3,
    /// Inconsistent warp configuration.
    Config = 4,
    /// Malformed file contents.
    Format = 5,
    Io = 6,
    Detection = 7,
    /// A Rust panic was caught; the library state is unaffected.
    Panic = 8,
}

pub const FISHEYE_MODE_SIMPLE: u32 = 0;
pub const FISHEYE_MODE_MODIFIED: u32 = 1;
pub const FISHEYE_MODE_FULL: u32 = 2;

pub const FISHEYE_INTERP_NEAREST: u32 = 0;
pub const FISHEYE_INTERP_BILINEAR: u32 = 1;
pub const FISHEYE_INTERP_BICUBIC: u32 = 2;

/// Opaque lookup table.
pub struct FisheyeLut {
    inner: Lut,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FisheyeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Domain(_) => FisheyeStatus::Domain,
            Error::Config(_) => FisheyeStatus::Config,
            Error::Argument(_) => FisheyeStatus::Argument,
            Error::Format(_) => FisheyeStatus::Format,
            Error::Detection(_) => FisheyeStatus::Detection,
            Error::Io(_) => FisheyeStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: FisheyeStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn null(what: &str) -> Failure {
    fail(FisheyeStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FisheyeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            FisheyeStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            FisheyeStatus::Panic
        }
    }
}

fn mode_from(mode: u32) -> Result<Mode, Failure> {
    match mode {
        FISHEYE_MODE_SIMPLE => Ok(Mode::Simple),
        FISHEYE_MODE_MODIFIED => Ok(Mode::Modified),
        FISHEYE_MODE_FULL => Ok(Mode::Full),
        other => Err(fail(FisheyeStatus::Argument, format!("unknown mode {other}"))),
    }
}

fn interp_from(interp: u32) -> Result<Interpolation, Failure> {
    match interp {
        FISHEYE_INTERP_NEAREST => Ok(Interpolation::Nearest),
        FISHEYE_INTERP_BILINEAR => Ok(Interpolation::Bilinear),
        FISHEYE_INTERP_BICUBIC => Ok(Interpolation::Bicubic),
        other => Err(fail(FisheyeStatus::Argument, format!("unknown interpolation {other}"))),
    }
}

/// # Safety
/// `path` must be null or a valid NUL-terminated string.
unsafe fn path_from(path: *const c_char) -> Result<PathBuf, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(path).to_str().map_err(|_| fail(FisheyeStatus::Argument, "path is not valid UTF-8"))?;
    Ok(PathBuf::from(s))
}

/// Static description of a status code (taken as a plain integer so any
/// value is safe to pass). Never null.
#[no_mangle]
pub extern "C" fn fisheye_status_str(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer",
        2 => c"invalid argument",
        3 => c"domain error",
        4 => c"configuration error",
        5 => c"format error",
        6 => c"I/O error",
        7 => c"detection error",
        8 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread, or an empty string.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn fisheye_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Maps output-plane point `(x, y)` (pixels, origin at the image center) to
/// the source plane.
///
/// # Safety
/// `sx` and `sy` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fisheye_map_point(
    big_r0: f64,
    mode: u32,
    x: f64,
    y: f64,
    sx: *mut f64,
    sy: *mut f64,
) -> FisheyeStatus {
    guard(|| {
        if sx.is_null() || sy.is_null() {
            return Err(null("output pointer"));
        }
        let cam = CameraModel::new(big_r0)?;
        let s = mode_from(mode)?.plane_to_source(PlanePoint::new(x, y), &cam)?;
        *sx = s.x;
        *sy = s.y;
        Ok(())
    })
}

/// Angle of view in degrees of a simple-mode canvas of radius `ratio · R₀`.
///
/// # Safety
/// `deg` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fisheye_fov(ratio: f64, deg: *mut f64) -> FisheyeStatus {
    guard(|| {
        if deg.is_null() {
            return Err(null("deg"));
        }
        *deg = fov_of_canvas(ratio)?;
        Ok(())
    })
}

/// Builds an `out_width × out_height` table for a `src_width × src_height`
/// source and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_build(
    big_r0: f64,
    mode: u32,
    out_width: usize,
    out_height: usize,
    src_width: usize,
    src_height: usize,
    out: *mut *mut FisheyeLut,
) -> FisheyeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let cam = CameraModel::new(big_r0)?;
        let cfg = WarpConfig::with_output_size(mode_from(mode)?, cam, out_width, out_height)?;
        let lut = build_lut(&cfg, src_width, src_height)?;
        *out = Box::into_raw(Box::new(FisheyeLut { inner: lut }));
        Ok(())
    })
}

/// Reads a table written by [`fisheye_lut_save`] or the `fisheye` tool.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_load(path: *const c_char, out: *mut *mut FisheyeLut) -> FisheyeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let lut = Lut::load(path_from(path)?)?;
        *out = Box::into_raw(Box::new(FisheyeLut { inner: lut }));
        Ok(())
    })
}

/// # Safety
/// `lut` must be a live handle; `path` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_save(lut: *const FisheyeLut, path: *const c_char) -> FisheyeStatus {
    guard(|| {
        let lut = lut.as_ref().ok_or_else(|| null("lut"))?;
        lut.inner.save(path_from(path)?)?;
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `lut` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_free(lut: *mut FisheyeLut) {
    if !lut.is_null() {
        drop(Box::from_raw(lut));
    }
}

/// Table width, or 0 for a null handle.
///
/// # Safety
/// `lut` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_width(lut: *const FisheyeLut) -> usize {
    lut.as_ref().map_or(0, |l| l.inner.width())
}

/// Table height, or 0 for a null handle.
///
/// # Safety
/// `lut` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_height(lut: *const FisheyeLut) -> usize {
    lut.as_ref().map_or(0, |l| l.inner.height())
}

/// Source coordinate of output pixel `(i, j)`. Out-of-range pixels yield
/// NaN in both components.
///
/// # Safety
/// `lut` must be a live handle; `sx` and `sy` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fisheye_lut_get(
    lut: *const FisheyeLut,
    i: usize,
    j: usize,
    sx: *mut f32,
    sy: *mut f32,
) -> FisheyeStatus {
    guard(|| {
        let lut = lut.as_ref().ok_or_else(|| null("lut"))?;
        if sx.is_null() || sy.is_null() {
            return Err(null("output pointer"));
        }
        let (w, h) = (lut.inner.width(), lut.inner.height());
        if i >= w || j >= h {
            return Err(fail(FisheyeStatus::Argument, format!("pixel ({i}, {j}) outside {w}x{h} table")));
        }
        let [x, y] = lut.inner.get(i, j).unwrap_or([f32::NAN, f32::NAN]);
        *sx = x;
        *sy = y;
        Ok(())
    })
}

/// Resamples an 8-bit row-major source (`channels` 1 or 3, rows tightly
/// packed) through `lut` into `dst`, which must hold exactly
/// `lut width × lut height × channels` bytes.
///
/// # Safety
/// `lut` must be a live handle; `src` readable for
/// `src_width × src_height × channels` bytes; `dst` writable for `dst_len`
/// bytes and not overlapping `src`.
#[no_mangle]
pub unsafe extern "C" fn fisheye_remap(
    lut: *const FisheyeLut,
    src: *const u8,
    src_width: usize,
    src_height: usize,
    channels: usize,
    interp: u32,
    dst: *mut u8,
    dst_len: usize,
) -> FisheyeStatus {
    guard(|| {
        let lut = lut.as_ref().ok_or_else(|| null("lut"))?;
        if src.is_null() {
            return Err(null("src"));
        }
        if dst.is_null() {
            return Err(null("dst"));
        }
        let interp = interp_from(interp)?;
        let src_len = src_width
            .checked_mul(src_height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| fail(FisheyeStatus::Argument, "source size overflows"))?;
        let want = lut.inner.width() * lut.inner.height() * channels;
        if dst_len != want {
            return Err(fail(FisheyeStatus::Argument, format!("dst holds {dst_len} bytes, need {want}")));
        }
        let data = std::slice::from_raw_parts(src, src_len).to_vec();
        let img = ImageBuffer::from_raw(src_width, src_height, channels, data)?;
        let out = remap(&img, &lut.inner, interp)?;
        std::slice::from_raw_parts_mut(dst, dst_len).copy_from_slice(out.data());
        Ok(())
    })
}

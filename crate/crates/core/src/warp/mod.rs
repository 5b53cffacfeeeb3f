//! Inverse-mapping warp engine.
//!
//! [`build_lut`] evaluates the selected plane-to-source map once per output
//! pixel and stores the source coordinate as `f32`; [`remap`] then resamples
//! any number of frames through that table. Output pixels whose source point
//! falls outside the source raster hold a sentinel and come out black.
//!
//! Pixel `(i, j)` covers the continuous square `[i, i+1) × [j, j+1)`, so its
//! center is `(i + 0.5, j + 0.5)` and the image center is `(w/2, h/2)`.
//! LUT entries use the same continuous coordinates.

mod config;
mod interp;
mod lut;
mod lutfile;
mod remap;

pub use config::{Interpolation, WarpConfig};
pub use interp::{catmull_rom_weights, interpolate};
pub use lut::{build_lut, Lut};
pub use lutfile::LUT_MAGIC;
pub use remap::{remap, warp};

pub use crate::model::Mode;

//! Distortion correction for equidistant fisheye lenses.
//!
//! The crate is split along the processing chain:
//!
//! * [`model`] holds the radial mapping functions and the two-stage
//!   wide-angle pipeline as pure `f64` math.
//! * [`warp`] turns a [`warp::WarpConfig`] into a per-pixel lookup table and
//!   resamples images through it.
//! * [`imageio`] reads and writes 8-bit PNG and binary PGM/PPM.
//! * [`synth`] renders ground-truth fisheye targets and measures residual
//!   distortion.
//! * [`cli`] backs the `fisheye` binary.

pub mod cli;
mod error;
pub mod image;
pub mod imageio;
pub mod model;
pub mod synth;
pub mod warp;

pub use error::{Error, Result};
pub use image::ImageBuffer;
pub use model::CameraModel;
pub use warp::{Interpolation, Lut, Mode, WarpConfig};

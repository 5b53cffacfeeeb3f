use crate::error::{argument, Result};

/// Row-major 8-bit raster with one (gray) or three (RGB) interleaved channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl ImageBuffer {
    /// Wraps existing samples, checking that the length matches.
    pub fn from_raw(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(argument(format!("image dimensions must be positive, got {width}x{height}")));
        }
        if channels != 1 && channels != 3 {
            return Err(argument(format!("images have 1 or 3 channels, got {channels}")));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| argument("image dimensions overflow"))?;
        if data.len() != expected {
            return Err(argument(format!(
                "{width}x{height}x{channels} image needs {expected} bytes, got {}",
                data.len()
            )));
        }
        Ok(Self { width, height, channels, data })
    }

    /// An all-black image.
    pub fn new(width: usize, height: usize, channels: usize) -> Result<Self> {
        Self::from_raw(width, height, channels, vec![0; width * height * channels])
    }

    /// Builds a grayscale image from a per-pixel function of `(column, row)`.
    pub fn from_fn_gray(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                data.push(f(i, j));
            }
        }
        Self::from_raw(width, height, 1, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    /// Bytes per row.
    pub fn stride(&self) -> usize {
        self.width * self.channels
    }

    /// The samples of pixel `(i, j)`. Panics when out of bounds.
    pub fn pixel(&self, i: usize, j: usize) -> &[u8] {
        assert!(i < self.width && j < self.height, "pixel ({i}, {j}) outside {}x{}", self.width, self.height);
        let at = (j * self.width + i) * self.channels;
        &self.data[at..at + self.channels]
    }

    pub fn pixel_mut(&mut self, i: usize, j: usize) -> &mut [u8] {
        assert!(i < self.width && j < self.height, "pixel ({i}, {j}) outside {}x{}", self.width, self.height);
        let at = (j * self.width + i) * self.channels;
        &mut self.data[at..at + self.channels]
    }
}

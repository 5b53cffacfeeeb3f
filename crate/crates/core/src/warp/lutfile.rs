//! `FLUT1` binary table format: magic, `u32` width and height, then
//! `width × height` row-major `(f32 sx, f32 sy)` pairs, all little-endian.
//! Out-of-range entries are a quiet NaN in both components.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::Lut;
use crate::error::{Error, Result};

pub const LUT_MAGIC: [u8; 6] = *b"FLUT1\0";

impl Lut {
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(&LUT_MAGIC)?;
        out.write_all(&(self.width() as u32).to_le_bytes())?;
        out.write_all(&(self.height() as u32).to_le_bytes())?;
        for [sx, sy] in self.entries() {
            let (sx, sy) = if sx.is_nan() { (f32::NAN, f32::NAN) } else { (*sx, *sy) };
            out.write_all(&sx.to_le_bytes())?;
            out.write_all(&sy.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a table, rejecting a wrong magic, truncated payload or trailing bytes.
    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut header = [0u8; 14];
        input.read_exact(&mut header).map_err(truncated)?;
        if header[..6] != LUT_MAGIC {
            return Err(Error::Format("not a FLUT1 lookup table (bad magic)".into()));
        }
        let width = u32::from_le_bytes(header[6..10].try_into().unwrap()) as usize;
        let height = u32::from_le_bytes(header[10..14].try_into().unwrap()) as usize;
        if width == 0 || height == 0 {
            return Err(Error::Format(format!("LUT dimensions must be positive, got {width}x{height}")));
        }
        let count = width.checked_mul(height).ok_or_else(|| Error::Format("LUT dimensions overflow".into()))?;
        let mut payload = Vec::new();
        input.take(count as u64 * 8 + 1).read_to_end(&mut payload)?;
        if payload.len() < count * 8 {
            return Err(Error::Format(format!(
                "truncated LUT payload: expected {} bytes, got {}",
                count * 8,
                payload.len()
            )));
        }
        if payload.len() > count * 8 {
            return Err(Error::Format("trailing bytes after LUT payload".into()));
        }
        let entries = payload
            .chunks_exact(8)
            .map(|c| [f32::from_le_bytes(c[0..4].try_into().unwrap()), f32::from_le_bytes(c[4..8].try_into().unwrap())])
            .collect();
        Lut::from_entries(width, height, entries)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        self.write_to(&mut out)?;
        out.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn truncated(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        Error::Format("truncated LUT header".into())
    } else {
        Error::Io(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Lut {
        Lut::from_entries(3, 2, vec![[0.5, 0.5], [f32::NAN, f32::NAN], [2.25, 1.0], [0.0, 2.0], [3.0, 0.0], [1.5, 1.5]])
            .unwrap()
    }

    #[test]
    fn byte_layout() {
        let mut buf = Vec::new();
        sample().write_to(&mut buf).unwrap();
        assert_eq!(buf.len(), 14 + 6 * 8);
        assert_eq!(&buf[..6], b"FLUT1\0");
        assert_eq!(&buf[6..14], &[3, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(&buf[14..18], &0.5f32.to_le_bytes());
        let sentinel_x = f32::from_le_bytes(buf[22..26].try_into().unwrap());
        let sentinel_y = f32::from_le_bytes(buf[26..30].try_into().unwrap());
        assert!(sentinel_x.is_nan() && sentinel_y.is_nan());
        // Quiet NaN: top mantissa bit set.
        assert_ne!(sentinel_x.to_bits() & 0x0040_0000, 0);
    }

    #[test]
    fn round_trip_preserves_bits() {
        let lut = sample();
        let mut buf = Vec::new();
        lut.write_to(&mut buf).unwrap();
        let back = Lut::read_from(buf.as_slice()).unwrap();
        assert_eq!(back.width(), 3);
        for (a, b) in lut.entries().iter().zip(back.entries()) {
            assert_eq!(a[0].to_bits(), b[0].to_bits());
            assert_eq!(a[1].to_bits(), b[1].to_bits());
        }
    }

    #[test]
    fn rejects_bad_magic() {
        let mut buf = Vec::new();
        sample().write_to(&mut buf).unwrap();
        buf[4] = b'2';
        assert!(matches!(Lut::read_from(buf.as_slice()), Err(Error::Format(_))));
    }

    #[test]
    fn rejects_truncation() {
        let mut buf = Vec::new();
        sample().write_to(&mut buf).unwrap();
        for cut in [3, 13, buf.len() - 1, buf.len() - 8] {
            assert!(matches!(Lut::read_from(&buf[..cut]), Err(Error::Format(_))), "cut at {cut}");
        }
        buf.push(0);
        assert!(Lut::read_from(buf.as_slice()).is_err());
    }
}

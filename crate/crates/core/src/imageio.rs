//! 8-bit PNG and binary PGM/PPM reading and writing.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{argument, Error, Result};
use crate::image::ImageBuffer;

/// On-disk raster format, chosen by file extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFileFormat {
    Png,
    /// `.pgm` (P5, grayscale) or `.ppm` (P6, RGB).
    Pnm {
        channels: usize,
    },
}

impl ImageFileFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).unwrap_or_default();
        match ext.as_str() {
            "png" => Ok(Self::Png),
            "pgm" => Ok(Self::Pnm { channels: 1 }),
            "ppm" => Ok(Self::Pnm { channels: 3 }),
            _ => Err(Error::Format(format!(
                "unsupported image extension for {} (expected .png, .pgm or .ppm)",
                path.display()
            ))),
        }
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let format = ImageFileFormat::from_path(path)?;
    let reader = BufReader::new(File::open(path)?);
    match format {
        ImageFileFormat::Png => decode_png(reader),
        ImageFileFormat::Pnm { .. } => decode_pnm(reader),
    }
}

pub fn save_image(path: impl AsRef<Path>, img: &ImageBuffer) -> Result<()> {
    let path = path.as_ref();
    let format = ImageFileFormat::from_path(path)?;
    if let ImageFileFormat::Pnm { channels } = format {
        if channels != img.channels() {
            return Err(argument(format!("{}-channel image cannot be written as {}", img.channels(), path.display())));
        }
    }
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        ImageFileFormat::Png => encode_png(&mut out, img)?,
        ImageFileFormat::Pnm { .. } => encode_pnm(&mut out, img)?,
    }
    out.flush()?;
    Ok(())
}

pub fn encode_pnm<W: Write>(mut out: W, img: &ImageBuffer) -> Result<()> {
    let magic = if img.channels() == 1 { "P5" } else { "P6" };
    write!(out, "{magic}\n{} {}\n255\n", img.width(), img.height())?;
    out.write_all(img.data())?;
    Ok(())
}

/// Reads the next header token, skipping whitespace and `#` comments.
fn pnm_token<R: Read>(bytes: &mut io::Bytes<R>) -> Result<String> {
    let mut token = String::new();
    loop {
        let b = bytes.next().ok_or_else(|| eof("PNM header"))??;
        match b {
            b'#' if token.is_empty() => {
                for c in bytes.by_ref() {
                    if c? == b'\n' {
                        break;
                    }
                }
            }
            b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c => {
                if !token.is_empty() {
                    // The single whitespace after the token has been consumed.
                    return Ok(token);
                }
            }
            _ => token.push(b as char),
        }
    }
}

fn eof(what: &str) -> Error {
    Error::Io(io::Error::new(io::ErrorKind::UnexpectedEof, format!("truncated {what}")))
}

fn pnm_number<R: Read>(bytes: &mut io::Bytes<R>, what: &str) -> Result<usize> {
    let tok = pnm_token(bytes)?;
    tok.parse().map_err(|_| Error::Format(format!("invalid PNM {what}: {tok:?}")))
}

pub fn decode_pnm<R: Read>(reader: R) -> Result<ImageBuffer> {
    let mut bytes = io::BufReader::new(reader).bytes();
    let magic = pnm_token(&mut bytes)?;
    let channels = match magic.as_str() {
        "P5" => 1,
        "P6" => 3,
        other => return Err(Error::Format(format!("unsupported PNM magic {other:?} (expected P5 or P6)"))),
    };
    let width = pnm_number(&mut bytes, "width")?;
    let height = pnm_number(&mut bytes, "height")?;
    let maxval = pnm_number(&mut bytes, "maxval")?;
    if maxval != 255 {
        return Err(Error::Format(format!("only maxval 255 is supported, got {maxval}")));
    }
    if width == 0 || height == 0 {
        return Err(Error::Format(format!("PNM dimensions must be positive, got {width}x{height}")));
    }
    let len = width * height * channels;
    let mut data = Vec::with_capacity(len);
    for b in bytes.by_ref().take(len) {
        data.push(b?);
    }
    if data.len() < len {
        return Err(eof("PNM payload"));
    }
    ImageBuffer::from_raw(width, height, channels, data)
}

pub fn encode_png<W: Write>(out: W, img: &ImageBuffer) -> Result<()> {
    let mut enc = png::Encoder::new(out, img.width() as u32, img.height() as u32);
    enc.set_color(if img.channels() == 1 { png::ColorType::Grayscale } else { png::ColorType::Rgb });
    enc.set_depth(png::BitDepth::Eight);
    let mut writer = enc.write_header().map_err(png_encode_error)?;
    writer.write_image_data(img.data()).map_err(png_encode_error)?;
    writer.finish().map_err(png_encode_error)?;
    Ok(())
}

fn png_encode_error(e: png::EncodingError) -> Error {
    match e {
        png::EncodingError::IoError(io) => Error::Io(io),
        other => Error::Format(other.to_string()),
    }
}

fn png_decode_error(e: png::DecodingError) -> Error {
    match e {
        png::DecodingError::IoError(io) => Error::Io(io),
        other => Error::Format(other.to_string()),
    }
}

/// Alpha-weighted value over a black background.
fn over_black(v: u8, alpha: u8) -> u8 {
    ((v as u32 * alpha as u32 + 127) / 255) as u8
}

pub fn decode_png<R: io::BufRead + io::Seek>(reader: R) -> Result<ImageBuffer> {
    let mut decoder = png::Decoder::new(reader);
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_decode_error)?;
    if reader.info().bit_depth == png::BitDepth::Sixteen {
        return Err(Error::Format("16-bit PNG is not supported".into()));
    }
    let size = reader.output_buffer_size().ok_or_else(|| Error::Format("PNG too large".into()))?;
    let mut buf = vec![0; size];
    let frame = reader.next_frame(&mut buf).map_err(png_decode_error)?;
    if frame.bit_depth != png::BitDepth::Eight {
        return Err(Error::Format(format!("unsupported PNG bit depth {:?}", frame.bit_depth)));
    }
    let (w, h) = (frame.width as usize, frame.height as usize);
    let line = frame.line_size;
    let rows = buf[..frame.buffer_size()].chunks_exact(line);
    let (channels, data): (usize, Vec<u8>) = match frame.color_type {
        png::ColorType::Grayscale => (1, rows.flat_map(|r| &r[..w]).copied().collect()),
        png::ColorType::Rgb => (3, rows.flat_map(|r| &r[..3 * w]).copied().collect()),
        png::ColorType::GrayscaleAlpha => {
            (1, rows.flat_map(|r| r[..2 * w].chunks_exact(2).map(|p| over_black(p[0], p[1]))).collect())
        }
        png::ColorType::Rgba => (
            3,
            rows.flat_map(|r| {
                r[..4 * w]
                    .chunks_exact(4)
                    .flat_map(|p| [over_black(p[0], p[3]), over_black(p[1], p[3]), over_black(p[2], p[3])])
            })
            .collect(),
        ),
        png::ColorType::Indexed => return Err(Error::Format("indexed PNG was not expanded".into())),
    };
    ImageBuffer::from_raw(w, h, channels, data)
}

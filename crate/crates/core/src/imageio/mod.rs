//! Reading and writing images, plus the square power-of-two preprocessing
//! every encoder expects.

mod manifest;
mod pnm;

pub use manifest::{RunManifest, ScanEntry};
pub use pnm::encode_p5;

use std::io::Cursor;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::encoders::{GrayImage, RgbImage};
use crate::error::{Error, Result};
use crate::postprocess::EdgeMap;

/// Decoded pixels before squaring.
#[derive(Debug, Clone, PartialEq)]
pub enum Pixels {
    /// Intensities already scaled to `[0, 1]`.
    Gray(Vec<f64>),
    Rgb(Vec<[u8; 3]>),
}

/// A decoded image of arbitrary size, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub pixels: Pixels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PadMode {
    /// Zero-pad on the right and bottom up to the next power-of-two square.
    #[default]
    Zero,
    /// Center-crop to the largest power-of-two square that fits.
    Crop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadOptions {
    pub pad: PadMode,
    /// Map color through `r/256 + g/256^2 + b/256^3` instead of Rec.601 luma.
    pub rgb_angle: bool,
}

/// Decodes PGM/PPM (ASCII or binary) or PNG, chosen by magic bytes.
pub fn decode_image(bytes: &[u8]) -> Result<Raster> {
    if bytes.starts_with(b"\x89PNG\r\n\x1a\n") {
        decode_png(bytes)
    } else if pnm::is_pnm(bytes) {
        pnm::decode(bytes)
    } else {
        Err(Error::Format("unrecognized image format (expected PGM, PPM or PNG)".into()))
    }
}

fn png_error(e: png::DecodingError) -> Error {
    match e {
        png::DecodingError::IoError(io) => Error::Io(io),
        other => Error::Format(format!("png: {other}")),
    }
}

fn decode_png(bytes: &[u8]) -> Result<Raster> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND | png::Transformations::STRIP_16);
    let mut reader = decoder.read_info().map_err(png_error)?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::Format("png: image too large".into()))?;
    let mut buf = vec![0u8; size];
    let info = reader.next_frame(&mut buf).map_err(png_error)?;
    let (width, height) = (info.width as usize, info.height as usize);
    if width == 0 || height == 0 {
        return Err(Error::Format("zero-sized image".into()));
    }
    let channels = info.color_type.samples();
    let rows = buf[..info.buffer_size()]
        .chunks_exact(info.line_size)
        .flat_map(|line| line[..width * channels].chunks_exact(channels));
    let pixels = match info.color_type {
        png::ColorType::Grayscale | png::ColorType::GrayscaleAlpha => {
            Pixels::Gray(rows.map(|px| f64::from(px[0]) / 255.0).collect())
        }
        png::ColorType::Rgb | png::ColorType::Rgba => Pixels::Rgb(rows.map(|px| [px[0], px[1], px[2]]).collect()),
        png::ColorType::Indexed => return Err(Error::Format("png: palette was not expanded".into())),
    };
    Ok(Raster { width, height, pixels })
}

/// Copies a `w x h` row-major buffer into a `side x side` square, either
/// zero-padded or center-cropped.
fn square<T: Copy>(data: &[T], width: usize, height: usize, pad: PadMode, fill: T) -> Result<(usize, Vec<T>)> {
    let (side, x0, y0) = match pad {
        PadMode::Zero => (width.max(height).next_power_of_two().max(2), 0, 0),
        PadMode::Crop => {
            let fit = width.min(height);
            if fit < 2 {
                return Err(Error::Size(format!(
                    "a {width}x{height} image is too small to crop to a 2x2 square"
                )));
            }
            let side = 1usize << (usize::BITS - 1 - fit.leading_zeros());
            (side, (width - side) / 2, (height - side) / 2)
        }
    };
    let mut out = vec![fill; side * side];
    for row in 0..side.min(height) {
        for col in 0..side.min(width) {
            let (sy, sx) = (row + y0, col + x0);
            if sy < height && sx < width {
                out[row * side + col] = data[sy * width + sx];
            }
        }
    }
    Ok((side, out))
}

impl Raster {
    /// Grayscale view squared to a power of two.
    pub fn to_gray_image(&self, options: &LoadOptions) -> Result<GrayImage> {
        match &self.pixels {
            Pixels::Gray(v) => {
                let (side, data) = square(v, self.width, self.height, options.pad, 0.0)?;
                GrayImage::new(side, data)
            }
            Pixels::Rgb(_) => {
                let rgb = self.to_rgb_image(options.pad)?;
                Ok(if options.rgb_angle {
                    rgb.to_angle_gray()
                } else {
                    rgb.to_luma()
                })
            }
        }
    }

    /// Color view squared to a power of two; gray pixels become `r = g = b`.
    pub fn to_rgb_image(&self, pad: PadMode) -> Result<RgbImage> {
        let rgb: Vec<[u8; 3]> = match &self.pixels {
            Pixels::Rgb(v) => v.clone(),
            Pixels::Gray(v) => v
                .iter()
                .map(|&p| {
                    let l = (p * 255.0).round() as u8;
                    [l, l, l]
                })
                .collect(),
        };
        let (side, data) = square(&rgb, self.width, self.height, pad, [0, 0, 0])?;
        RgbImage::new(side, data)
    }
}

pub fn load_raster(path: impl AsRef<Path>) -> Result<Raster> {
    decode_image(&std::fs::read(path)?)
}

/// Loads an image file as a square grayscale image with intensities in `[0, 1]`.
pub fn load_image(path: impl AsRef<Path>, options: &LoadOptions) -> Result<GrayImage> {
    load_raster(path)?.to_gray_image(options)
}

fn is_png_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

pub fn encode_png(width: usize, height: usize, data: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, width as u32, height as u32);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc
            .write_header()
            .map_err(|e| Error::Format(format!("png: {e}")))?;
        writer
            .write_image_data(data)
            .map_err(|e| Error::Format(format!("png: {e}")))?;
        writer.finish().map_err(|e| Error::Format(format!("png: {e}")))?;
    }
    Ok(out)
}

/// Writes an 8-bit gray raster: PNG for a `.png` extension, binary PGM otherwise.
pub fn save_gray_bytes(path: impl AsRef<Path>, width: usize, height: usize, data: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let bytes = if is_png_path(path) {
        encode_png(width, height, data)?
    } else {
        encode_p5(width, height, data)
    };
    std::fs::write(path, bytes)?;
    Ok(())
}

/// Edges as 255 on a 0 background.
pub fn save_edge_map(map: &EdgeMap, path: impl AsRef<Path>) -> Result<()> {
    save_gray_bytes(path, map.side(), map.side(), &map.to_bytes())
}

pub fn gray_to_bytes(img: &GrayImage) -> Vec<u8> {
    img.pixels().iter().map(|p| (p * 255.0).round() as u8).collect()
}

pub fn save_gray(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    save_gray_bytes(path, img.side(), img.side(), &gray_to_bytes(img))
}

/// Places equally sized square panels left to right with a one-pixel
/// mid-gray separator.
pub fn montage(panels: &[Vec<u8>], side: usize) -> (usize, usize, Vec<u8>) {
    let gap = 1;
    let width = panels.len() * side + panels.len().saturating_sub(1) * gap;
    let mut out = vec![128u8; width * side];
    for (k, panel) in panels.iter().enumerate() {
        let x0 = k * (side + gap);
        for row in 0..side {
            out[row * width + x0..row * width + x0 + side].copy_from_slice(&panel[row * side..(row + 1) * side]);
        }
    }
    (width, side, out)
}

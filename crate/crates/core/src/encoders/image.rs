use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

pub(crate) fn check_side(side: usize) -> Result<usize> {
    if side < 2 || !side.is_power_of_two() {
        return Err(Error::Size(format!(
            "image side {side} must be a power of two and at least 2"
        )));
    }
    Ok(side.trailing_zeros() as usize)
}

fn check_len(side: usize, len: usize) -> Result<()> {
    if len != side * side {
        return Err(Error::Size(format!(
            "expected {} pixels for a {side}x{side} image, got {len}",
            side * side
        )));
    }
    Ok(())
}

/// Square grayscale image with `2^n` pixels per side and intensities in `[0, 1]`.
///
/// Pixels are stored row-major; position index `i = row * side + col`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    side: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(side: usize, pixels: Vec<f64>) -> Result<Self> {
        check_side(side)?;
        check_len(side, pixels.len())?;
        if let Some((i, v)) = pixels
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Validation(format!(
                "pixel {i} has intensity {v} outside [0, 1]"
            )));
        }
        Ok(Self { side, pixels })
    }

    /// Builds an image from 8-bit levels, `intensity = level / 255`.
    pub fn from_levels(side: usize, levels: &[u8]) -> Result<Self> {
        Self::new(side, levels.iter().map(|&v| f64::from(v) / 255.0).collect())
    }

    pub fn filled(side: usize, value: f64) -> Result<Self> {
        Self::new(side, vec![value; side * side])
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    /// Size exponent `n` with `side = 2^n`.
    #[inline]
    pub fn n(&self) -> usize {
        self.side.trailing_zeros() as usize
    }

    #[inline]
    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.side + col]
    }

    pub fn transpose(&self) -> GrayImage {
        GrayImage {
            side: self.side,
            pixels: transpose(&self.pixels, self.side),
        }
    }

    /// Intensities scaled by `factor`, which must keep them in `[0, 1]`.
    pub fn scaled(&self, factor: f64) -> Result<GrayImage> {
        GrayImage::new(self.side, self.pixels.iter().map(|p| p * factor).collect())
    }

    /// Rounds intensities back to 8-bit levels. Fails when a pixel is not
    /// an exact multiple of `1/255` (within `1e-9`).
    pub fn to_levels(&self) -> Result<Vec<u8>> {
        self.pixels
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let v = p * 255.0;
                let r = v.round();
                if (v - r).abs() > 1e-9 {
                    Err(Error::Validation(format!(
                        "pixel {i} intensity {p} is not an 8-bit level"
                    )))
                } else {
                    Ok(r as u8)
                }
            })
            .collect()
    }
}

pub(crate) fn transpose<T: Copy>(values: &[T], side: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(values.len());
    for col in 0..side {
        for row in 0..side {
            out.push(values[row * side + col]);
        }
    }
    out
}

/// Square 24-bit color image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    side: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(side: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_side(side)?;
        check_len(side, pixels.len())?;
        Ok(Self { side, pixels })
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    /// One FRQI angle per pixel from the base-256 color map.
    pub fn to_angles(&self) -> AngleVector {
        AngleVector {
            angles: self
                .pixels
                .iter()
                .map(|&[r, g, b]| super::color::rgb_angle(r, g, b))
                .collect(),
        }
    }

    /// The grayscale image whose FRQI angles equal [`RgbImage::to_angles`],
    /// i.e. `I = r/256 + g/256^2 + b/256^3`.
    pub fn to_angle_gray(&self) -> GrayImage {
        GrayImage {
            side: self.side,
            pixels: self
                .pixels
                .iter()
                .map(|&[r, g, b]| super::color::packed_intensity(r, g, b))
                .collect(),
        }
    }

    /// Rec.601 luma, `(0.299 R + 0.587 G + 0.114 B) / 255`.
    pub fn to_luma(&self) -> GrayImage {
        GrayImage {
            side: self.side,
            pixels: self
                .pixels
                .iter()
                .map(|&[r, g, b]| {
                    let y = (0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b)) / 255.0;
                    y.clamp(0.0, 1.0)
                })
                .collect(),
        }
    }
}

/// Per-pixel FRQI angles, each in `[0, pi/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector {
    angles: Vec<f64>,
}

impl AngleVector {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some((i, a)) = angles
            .iter()
            .enumerate()
            .find(|(_, a)| !(0.0..=FRAC_PI_2).contains(*a))
        {
            return Err(Error::Validation(format!(
                "angle {i} = {a} is outside [0, pi/2]"
            )));
        }
        Ok(Self { angles })
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.angles
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.angles
    }
}

//! Intensity and color to FRQI angle maps.

use super::image::{AngleVector, GrayImage};
use crate::error::{Error, Result};

const B1: f64 = 256.0;
const B2: f64 = 256.0 * 256.0;
const B3: f64 = 256.0 * 256.0 * 256.0;

/// `theta_i = arccos(I_i)`, so that `cos(theta_i)` is the pixel intensity.
pub fn intensities_to_angles(img: &GrayImage) -> AngleVector {
    let angles = img.pixels().iter().map(|&p| p.clamp(0.0, 1.0).acos()).collect();
    AngleVector::new(angles).expect("arccos of [0, 1] lies in [0, pi/2]")
}

pub(crate) fn packed_intensity(r: u8, g: u8, b: u8) -> f64 {
    f64::from(r) / B1 + f64::from(g) / B2 + f64::from(b) / B3
}

pub(crate) fn rgb_angle(r: u8, g: u8, b: u8) -> f64 {
    packed_intensity(r, g, b).acos()
}

/// `theta = arccos(r/256 + g/256^2 + b/256^3)`.
pub fn rgb_to_angle(r: u32, g: u32, b: u32) -> Result<f64> {
    let channel = |name: &str, v: u32| {
        u8::try_from(v).map_err(|_| Error::Validation(format!("{name} channel {v} outside [0, 255]")))
    };
    Ok(rgb_angle(channel("red", r)?, channel("green", g)?, channel("blue", b)?))
}

/// Inverse of [`rgb_to_angle`]: reads `round(256^3 cos(theta))` as a
/// three-digit base-256 number.
pub fn angle_to_rgb(theta: f64) -> [u8; 3] {
    let v = (B3 * theta.cos()).round().max(0.0) as u64;
    let digit = |x: u64| x.min(255) as u8;
    [digit(v >> 16), digit((v >> 8) & 0xff), digit(v & 0xff)]
}

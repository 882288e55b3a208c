//! Netpbm reader (P2, P3, P5, P6) and P5 writer.

use super::{Pixels, Raster};
use crate::error::{Error, Result};

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("expected {what} at byte {start}")))
    }
}

pub(super) fn is_pnm(bytes: &[u8]) -> bool {
    matches!(bytes, [b'P', b'2' | b'3' | b'5' | b'6', ..])
}

pub(super) fn decode(bytes: &[u8]) -> Result<Raster> {
    if !is_pnm(bytes) {
        return Err(Error::Format("not a P2/P3/P5/P6 netpbm file".into()));
    }
    let kind = bytes[1];
    let mut h = Header { bytes, pos: 2 };
    let width = h.number("width")? as usize;
    let height = h.number("height")? as usize;
    let maxval = h.number("maximum value")?;
    if width == 0 || height == 0 {
        return Err(Error::Format(format!("zero-sized image {width}x{height}")));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Format(format!("maximum value {maxval} outside 1..=65535")));
    }
    let channels = if matches!(kind, b'3' | b'6') { 3 } else { 1 };
    let count = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(channels))
        .ok_or_else(|| Error::Format("image dimensions overflow".into()))?;

    let samples: Vec<u32> = if matches!(kind, b'2' | b'3') {
        (0..count).map(|_| h.number("sample")).collect::<Result<_>>()?
    } else {
        // exactly one whitespace byte separates the header from the raster
        if h.pos >= bytes.len() || !bytes[h.pos].is_ascii_whitespace() {
            return Err(Error::Format("missing whitespace after header".into()));
        }
        let data = &bytes[h.pos + 1..];
        let wide = maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        if data.len() < need {
            return Err(Error::Format(format!(
                "raster truncated: {} of {need} bytes",
                data.len()
            )));
        }
        if wide {
            data[..need]
                .chunks_exact(2)
                .map(|b| u32::from(u16::from_be_bytes([b[0], b[1]])))
                .collect()
        } else {
            data[..need].iter().map(|&b| u32::from(b)).collect()
        }
    };
    if let Some(v) = samples.iter().find(|&&v| v > maxval) {
        return Err(Error::Format(format!("sample {v} exceeds maximum value {maxval}")));
    }

    let scale = f64::from(maxval);
    let pixels = if channels == 1 {
        Pixels::Gray(samples.iter().map(|&v| f64::from(v) / scale).collect())
    } else {
        let to8 = |v: u32| ((f64::from(v) / scale) * 255.0).round() as u8;
        Pixels::Rgb(
            samples
                .chunks_exact(3)
                .map(|c| [to8(c[0]), to8(c[1]), to8(c[2])])
                .collect(),
        )
    };
    Ok(Raster { width, height, pixels })
}

/// Binary 8-bit graymap.
pub fn encode_p5(width: usize, height: usize, data: &[u8]) -> Vec<u8> {
    assert_eq!(data.len(), width * height, "raster size mismatch");
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(data);
    out
}

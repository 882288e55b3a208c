//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The exported functions are thin wrappers over the `*_impl` functions,
//! which return `String` errors so they can be exercised natively.

use qedge::encoders::GrayImage;
use qedge::imageio::{decode_image, LoadOptions, PadMode};
use qedge::pipeline::{detect, detect_traditional_default, DetectConfig};
use qedge::qhed::{BoundaryMode, Method, PipelineConfig};
use qedge::statevector::MeasurePolicy;
use wasm_bindgen::prelude::*;

/// Result of one detection run, exposed to JavaScript through getters.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Detection {
    side: usize,
    modified: Vec<u8>,
    traditional: Vec<u8>,
    horizontal: Vec<u8>,
    vertical: Vec<u8>,
    thresholds: Vec<f64>,
    outcomes: Vec<u8>,
    probabilities: Vec<f64>,
}

#[wasm_bindgen]
impl Detection {
    #[wasm_bindgen(getter)]
    pub fn side(&self) -> usize {
        self.side
    }

    /// Outline map, 0 or 255 per pixel.
    #[wasm_bindgen(getter)]
    pub fn modified(&self) -> Vec<u8> {
        self.modified.clone()
    }

    /// Baseline map marking every nonzero difference.
    #[wasm_bindgen(getter)]
    pub fn traditional(&self) -> Vec<u8> {
        self.traditional.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn horizontal(&self) -> Vec<u8> {
        self.horizontal.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn vertical(&self) -> Vec<u8> {
        self.vertical.clone()
    }

    /// `[horizontal, vertical]`.
    #[wasm_bindgen(getter)]
    pub fn thresholds(&self) -> Vec<f64> {
        self.thresholds.clone()
    }

    /// Color-qubit outcomes per direction; empty for amplitude encoding.
    #[wasm_bindgen(getter)]
    pub fn outcomes(&self) -> Vec<u8> {
        self.outcomes.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn probabilities(&self) -> Vec<f64> {
        self.probabilities.clone()
    }

    #[wasm_bindgen(getter, js_name = modifiedCount)]
    pub fn modified_count(&self) -> usize {
        self.modified.iter().filter(|&&b| b != 0).count()
    }

    #[wasm_bindgen(getter, js_name = traditionalCount)]
    pub fn traditional_count(&self) -> usize {
        self.traditional.iter().filter(|&&b| b != 0).count()
    }
}

fn side_of(len: usize) -> Result<usize, String> {
    let side = (len as f64).sqrt().round() as usize;
    if side * side != len {
        return Err(format!("{len} pixels do not form a square image"));
    }
    Ok(side)
}

/// Synthetic test pattern as row-major intensities.
pub fn shape_impl(kind: &str, side: usize) -> Result<Vec<f64>, String> {
    if !side.is_power_of_two() || !(4..=64).contains(&side) {
        return Err(format!("side must be a power of two in 4..=64, got {side}"));
    }
    let s = side as f64;
    let inside = |r: usize, c: usize| -> f64 {
        let (y, x) = (r as f64 + 0.5, c as f64 + 0.5);
        match kind {
            "rectangle" => (r >= side / 4 && r < side * 3 / 4 && c > side / 8 && c <= side * 5 / 8) as u8 as f64,
            "disk" => {
                let (dy, dx) = (y - s / 2.0, x - s / 2.0);
                ((dy * dy + dx * dx).sqrt() < s * 0.35) as u8 as f64
            }
            "frame" => {
                let outer = r >= 1 && r < side - 1 && c >= 1 && c < side - 1;
                let inner = r >= side / 4 && r < side * 3 / 4 && c >= side / 4 && c < side * 3 / 4;
                (outer && !inner) as u8 as f64
            }
            "steps" => {
                let level = (c * 4 / side) as f64 / 4.0 + 0.2;
                if r >= 1 && r < side - 1 {
                    level
                } else {
                    0.0
                }
            }
            _ => f64::NAN,
        }
    };
    let pixels: Vec<f64> = (0..side * side).map(|i| inside(i / side, i % side)).collect();
    if pixels.iter().any(|p| p.is_nan()) {
        return Err(format!("unknown shape {kind:?}"));
    }
    Ok(pixels)
}

/// Decodes PNG/PGM/PPM bytes into a square grayscale image.
pub fn load_impl(bytes: &[u8], crop: bool, max_side: usize) -> Result<Vec<f64>, String> {
    let raster = decode_image(bytes).map_err(|e| e.to_string())?;
    let options = LoadOptions {
        pad: if crop { PadMode::Crop } else { PadMode::Zero },
        rgb_angle: false,
    };
    let img = raster.to_gray_image(&options).map_err(|e| e.to_string())?;
    if max_side == 0 || !max_side.is_power_of_two() {
        return Err(format!("max side must be a power of two, got {max_side}"));
    }
    Ok(downsample(img.pixels(), img.side(), max_side))
}

/// Box-averages a square image down to at most `max_side` per edge.
fn downsample(pixels: &[f64], side: usize, max_side: usize) -> Vec<f64> {
    if side <= max_side {
        return pixels.to_vec();
    }
    let f = side / max_side;
    let area = (f * f) as f64;
    (0..max_side * max_side)
        .map(|i| {
            let (r, c) = (i / max_side * f, i % max_side * f);
            (0..f * f).map(|k| pixels[(r + k / f) * side + c + k % f]).sum::<f64>() / area
        })
        .collect()
}

fn to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.iter().map(|&b| if b { 255 } else { 0 }).collect()
}

/// Runs both detectors. `branch` is one of `max-prob`, `forced-0`,
/// `forced-1`, `sampled`; a non-finite `threshold` selects the automatic one.
pub fn detect_impl(
    pixels: &[f64],
    method: &str,
    branch: &str,
    seed: u64,
    threshold: f64,
) -> Result<Detection, String> {
    let img = GrayImage::new(side_of(pixels.len())?, pixels.to_vec()).map_err(|e| e.to_string())?;
    let method = match method {
        "frqi" => Method::Frqi,
        "qpie" => Method::Qpie,
        other => return Err(format!("unknown method {other:?}")),
    };
    let branch = match branch {
        "max-prob" => MeasurePolicy::MaxProb,
        "forced-0" => MeasurePolicy::ForcedZero,
        "forced-1" => MeasurePolicy::ForcedOne,
        "sampled" => MeasurePolicy::Sampled { seed },
        other => return Err(format!("unknown branch {other:?}")),
    };
    let config = DetectConfig {
        pipeline: PipelineConfig {
            method,
            branch,
            ..Default::default()
        },
        threshold: threshold.is_finite().then_some(threshold),
        ..Default::default()
    };
    let report = detect(&img, &config).map_err(|e| e.to_string())?;
    let traditional = detect_traditional_default(&img, BoundaryMode::Clipped).map_err(|e| e.to_string())?;
    let records: Vec<_> = [&report.horizontal, &report.vertical]
        .iter()
        .filter_map(|d| d.record)
        .collect();
    Ok(Detection {
        side: img.side(),
        modified: to_bytes(report.edges.bits()),
        traditional: to_bytes(traditional.bits()),
        horizontal: to_bytes(report.horizontal.map.bits()),
        vertical: to_bytes(report.vertical.map.bits()),
        thresholds: vec![report.horizontal.threshold.value, report.vertical.threshold.value],
        outcomes: records.iter().map(|r| r.outcome).collect(),
        probabilities: records.iter().map(|r| r.probability).collect(),
    })
}

#[wasm_bindgen]
pub fn shape(kind: &str, side: usize) -> Result<Vec<f64>, JsError> {
    shape_impl(kind, side).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = loadImage)]
pub fn load_image(bytes: &[u8], crop: bool, max_side: usize) -> Result<Vec<f64>, JsError> {
    load_impl(bytes, crop, max_side).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = detectEdges)]
pub fn detect_edges(pixels: &[f64], method: &str, branch: &str, seed: u64, threshold: f64) -> Result<Detection, JsError> {
    detect_impl(pixels, method, branch, seed, threshold).map_err(|e| JsError::new(&e))
}

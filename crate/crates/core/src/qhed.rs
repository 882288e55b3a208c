//! Hadamard edge scan: ancilla `H`, cyclic decrement, ancilla `H`, then
//! read the neighbor differences from the ancilla-`|1>` amplitudes.
//!
//! With the ancilla as qubit 0 and data amplitudes `c_i`, the final state is
//! `((c_0 + c_1), (c_0 - c_1), ..., (c_{N-1} + c_0), (c_{N-1} - c_0)) / 2`.

use serde::{Deserialize, Serialize};

use crate::encoders::{frqi_encode, intensities_to_angles, qpie_encode, transpose, GrayImage};
use crate::error::{Error, Result};
use crate::statevector::{MeasurePolicy, MeasurementRecord, Qubit, StateVector, STATE_TOL};

const ANCILLA: Qubit = Qubit(0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanDirection {
    /// Left to right along rows.
    Horizontal,
    /// Top to bottom along columns, computed on the transposed image.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryMode {
    /// Pairs that straddle a row end (including the wrap-around term) are zeroed.
    #[default]
    Clipped,
    /// Every difference of the cyclic shift is kept.
    Cyclic,
}

/// Ancilla state fed into the scan after the FRQI color measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AncillaPrep {
    /// Ancilla reset to `|0>`; `H` gives `|+>` and differences land on the
    /// ancilla-`|1>` amplitudes.
    #[default]
    Plus,
    /// Ancilla reset to `|1>`; `H` gives `|->`. The ancilla-`|1>`
    /// amplitudes then hold `-(c_i + c_{i+1})/2` and the differences move to
    /// the ancilla-`|0>` half as `-(c_i - c_{i+1})/2`.
    Minus,
}

impl AncillaPrep {
    fn basis_value(self) -> u8 {
        match self {
            AncillaPrep::Plus => 0,
            AncillaPrep::Minus => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Qpie,
    #[default]
    Frqi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub method: Method,
    pub branch: MeasurePolicy,
    pub boundary: BoundaryMode,
    pub ancilla: AncillaPrep,
}

/// Signed neighbor differences `d_i = (c_i - c_{i+1}) / 2`, stored row-major
/// in image orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceGrid {
    side: usize,
    values: Vec<f64>,
    direction: ScanDirection,
    boundary: BoundaryMode,
}

impl DifferenceGrid {
    /// `values` are in image orientation. In clipped mode the entries on the
    /// trailing edge of the scan are forced to zero.
    pub fn new(side: usize, values: Vec<f64>, direction: ScanDirection, boundary: BoundaryMode) -> Result<Self> {
        if side < 2 || !side.is_power_of_two() || values.len() != side * side {
            return Err(Error::Size(format!(
                "{} values do not form a power-of-two square grid of side {side}",
                values.len()
            )));
        }
        let mut grid = Self {
            side,
            values,
            direction,
            boundary,
        };
        if boundary == BoundaryMode::Clipped {
            for i in 0..side * side {
                if grid.is_trailing(i) {
                    grid.values[i] = 0.0;
                }
            }
        }
        Ok(grid)
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.side.trailing_zeros() as usize
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn direction(&self) -> ScanDirection {
        self.direction
    }

    #[inline]
    pub fn boundary(&self) -> BoundaryMode {
        self.boundary
    }

    /// Whether image index `i` is the last pixel of its scan line, i.e. its
    /// pair partner lies on the next line (or wraps around).
    pub fn is_trailing(&self, i: usize) -> bool {
        match self.direction {
            ScanDirection::Horizontal => i % self.side == self.side - 1,
            ScanDirection::Vertical => i / self.side == self.side - 1,
        }
    }

    /// Values in scan order: row-major for horizontal grids, column-major
    /// for vertical ones.
    pub fn scan_order(&self) -> Vec<f64> {
        match self.direction {
            ScanDirection::Horizontal => self.values.clone(),
            ScanDirection::Vertical => transpose(&self.values, self.side),
        }
    }
}

/// Runs the scan on a state that already carries the ancilla as qubit 0.
fn scan_prepared(mut state: StateVector) -> Result<StateVector> {
    state.apply_h(ANCILLA)?;
    state.apply_decrement();
    state.apply_h(ANCILLA)?;
    Ok(state)
}

/// Appends an ancilla in `|0>` as qubit 0 and runs `H`, decrement, `H`.
pub fn qhed_core(state: &StateVector) -> Result<StateVector> {
    qhed_core_with(state, AncillaPrep::Plus)
}

pub fn qhed_core_with(state: &StateVector, prep: AncillaPrep) -> Result<StateVector> {
    scan_prepared(state.prepend_qubit(prep.basis_value())?)
}

/// Reads the differences out of a post-scan state produced with the `|+>`
/// ancilla.
pub fn extract_differences(
    state: &StateVector,
    side: usize,
    direction: ScanDirection,
    boundary: BoundaryMode,
) -> Result<DifferenceGrid> {
    extract_differences_with(state, side, direction, boundary, AncillaPrep::Plus)
}

pub fn extract_differences_with(
    state: &StateVector,
    side: usize,
    direction: ScanDirection,
    boundary: BoundaryMode,
    prep: AncillaPrep,
) -> Result<DifferenceGrid> {
    let pixels = side * side;
    if state.len() != 2 * pixels {
        return Err(Error::Contract(format!(
            "{}-qubit state is not a scan of a {side}x{side} image",
            state.num_qubits()
        )));
    }
    let (offset, sign) = match prep {
        AncillaPrep::Plus => (1, 1.0),
        AncillaPrep::Minus => (0, -1.0),
    };
    let amps = state.amplitudes();
    let mut scan = Vec::with_capacity(pixels);
    for i in 0..pixels {
        let a = amps[2 * i + offset];
        if a.im.abs() > STATE_TOL {
            return Err(Error::Contract(format!(
                "difference amplitude {i} has imaginary part {:e}",
                a.im
            )));
        }
        scan.push(sign * a.re);
    }
    let values = match direction {
        ScanDirection::Horizontal => scan,
        ScanDirection::Vertical => transpose(&scan, side),
    };
    DifferenceGrid::new(side, values, direction, boundary)
}

fn oriented(img: &GrayImage, direction: ScanDirection) -> GrayImage {
    match direction {
        ScanDirection::Horizontal => img.clone(),
        ScanDirection::Vertical => img.transpose(),
    }
}

/// Amplitude-encodes the image and scans it.
pub fn scan_qpie(img: &GrayImage, direction: ScanDirection, boundary: BoundaryMode) -> Result<DifferenceGrid> {
    let state = qpie_encode(&oriented(img, direction))?;
    let scanned = qhed_core(&state)?;
    extract_differences(&scanned, img.side(), direction, boundary)
}

/// FRQI-encodes `arccos(I)` and measures the color qubit, returning the
/// full `2n + 1` qubit post-measurement state.
fn measure_color(img: &GrayImage, policy: MeasurePolicy) -> Result<(MeasurementRecord, StateVector)> {
    let mut state = frqi_encode(&intensities_to_angles(img))?;
    let color = Qubit(2 * img.n());
    let record = state.partial_measure(color, policy)?;
    Ok((record, state))
}

/// Encodes the image with FRQI, measures the color qubit and drops it.
///
/// Outcome 0 leaves the amplitude encoding of `I`, outcome 1 that of
/// `sqrt(1 - I^2)`.
pub fn frqi_measure_and_prepare(img: &GrayImage, policy: MeasurePolicy) -> Result<(MeasurementRecord, StateVector)> {
    let (record, state) = measure_color(img, policy)?;
    let data = state.discard_qubit(Qubit(record.qubit))?;
    Ok((record, data))
}

/// FRQI pipeline for one direction: encode, measure the color qubit, reset
/// it to the ancilla value with a conditional X, reuse it for the scan.
pub fn scan_frqi(
    img: &GrayImage,
    direction: ScanDirection,
    config: &PipelineConfig,
) -> Result<(DifferenceGrid, MeasurementRecord)> {
    let (record, mut state) = measure_color(&oriented(img, direction), config.branch)?;
    let color = Qubit(record.qubit);
    let want = config.ancilla.basis_value();
    if record.outcome != want {
        state.apply_x(color)?;
    }
    let prepared = state.discard_qubit(color)?.prepend_qubit(want)?;
    let scanned = scan_prepared(prepared)?;
    let grid = extract_differences_with(&scanned, img.side(), direction, config.boundary, config.ancilla)?;
    Ok((grid, record))
}

/// Dispatches on `config.method`. The QPIE path has no measurement record.
pub fn scan(
    img: &GrayImage,
    direction: ScanDirection,
    config: &PipelineConfig,
) -> Result<(DifferenceGrid, Option<MeasurementRecord>)> {
    match config.method {
        Method::Qpie => Ok((scan_qpie(img, direction, config.boundary)?, None)),
        Method::Frqi => scan_frqi(img, direction, config).map(|(g, r)| (g, Some(r))),
    }
}

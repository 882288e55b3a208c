use num_complex::Complex64;

use super::image::{check_side, GrayImage};
use crate::error::{Error, Result};
use crate::statevector::{check_register_size, StateVector, STATE_TOL};

/// Bits per stored gray level.
pub const NEQR_VALUE_BITS: usize = 8;

/// Basis-encoded 8-bit image on `8 + 2n` qubits.
///
/// Position bits are qubits `0..2n`, value bits are `2n..2n+8`; each pixel
/// contributes amplitude `1/2^n` on `|value>|position>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Neqr8State {
    state: StateVector,
    n: usize,
}

impl Neqr8State {
    /// Wraps a state after checking the NEQR amplitude pattern.
    pub fn from_state(state: StateVector, n: usize) -> Result<Self> {
        if state.num_qubits() != NEQR_VALUE_BITS + 2 * n {
            return Err(Error::Contract(format!(
                "{}-qubit state cannot hold an NEQR image with n = {n}",
                state.num_qubits()
            )));
        }
        let expect = 1.0 / (1u64 << n) as f64;
        if state
            .amplitudes()
            .iter()
            .any(|a| a.norm() > STATE_TOL && (a.norm() - expect).abs() > STATE_TOL)
        {
            return Err(Error::Contract("NEQR amplitudes must all have magnitude 1/2^n".into()));
        }
        decode_levels(&state, n)?;
        Ok(Self { state, n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn into_state(self) -> StateVector {
        self.state
    }
}

/// Register width of an NEQR encoding of a `2^n x 2^n` image.
pub fn neqr_qubits(n: usize) -> usize {
    NEQR_VALUE_BITS + 2 * n
}

/// Direct state assignment of the NEQR superposition. Intensities must be
/// exact 8-bit levels.
pub fn neqr_encode(img: &GrayImage) -> Result<Neqr8State> {
    let levels = img.to_levels()?;
    let n = img.n();
    check_register_size(neqr_qubits(n))?;
    let pos_bits = 2 * n;
    let amp = Complex64::new(1.0 / img.side() as f64, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << neqr_qubits(n)];
    for (i, &v) in levels.iter().enumerate() {
        amps[(usize::from(v) << pos_bits) | i] = amp;
    }
    Ok(Neqr8State {
        state: StateVector::from_amplitudes(amps)?,
        n,
    })
}

pub fn neqr_decode(neqr: &Neqr8State) -> Result<GrayImage> {
    let levels = decode_levels(&neqr.state, neqr.n)?;
    GrayImage::from_levels(1 << neqr.n, &levels)
}

fn decode_levels(state: &StateVector, n: usize) -> Result<Vec<u8>> {
    let side = 1usize << n;
    check_side(side)?;
    let pos_bits = 2 * n;
    let amps = state.amplitudes();
    let mut levels = Vec::with_capacity(side * side);
    for i in 0..side * side {
        let mut found = (0..=255usize).filter(|v| amps[(v << pos_bits) | i].norm() > STATE_TOL);
        match (found.next(), found.next()) {
            (Some(v), None) => levels.push(v as u8),
            (None, _) => {
                return Err(Error::Contract(format!("position {i} holds no value")));
            }
            (Some(_), Some(_)) => {
                return Err(Error::Contract(format!("position {i} holds more than one value")));
            }
        }
    }
    Ok(levels)
}

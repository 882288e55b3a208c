//! Dense statevector simulator.
//!
//! Only the pieces the image pipeline needs: single-qubit gates, a
//! multi-controlled Ry, the cyclic decrement permutation, projective
//! Z measurement of one qubit and removal of a qubit that sits in a
//! basis state.
//!
//! Qubit `k` addresses bit `k` of the amplitude index (bit 0 is least
//! significant).

mod gate;
mod measure;

pub use gate::Gate2;
pub use measure::{MeasurePolicy, MeasurementRecord};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 24;

/// Tolerance for state contracts (norm, basis-state checks, unitarity).
pub const STATE_TOL: f64 = 1e-10;

/// Probabilities at or below this are treated as zero.
pub const PROB_FLOOR: f64 = 1e-12;

/// Index of a qubit inside a register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Qubit(pub usize);

impl Qubit {
    #[inline]
    pub fn mask(self) -> usize {
        1 << self.0
    }
}

impl From<usize> for Qubit {
    fn from(index: usize) -> Self {
        Qubit(index)
    }
}

/// A normalized vector of `2^m` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

pub fn check_register_size(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::Size(format!(
            "register of {num_qubits} qubits is outside the supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl StateVector {
    /// The all-zero basis state `|0...0>` on `num_qubits` qubits.
    pub fn zero_state(num_qubits: usize) -> Result<Self> {
        Self::basis_state(num_qubits, 0)
    }

    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        check_register_size(num_qubits)?;
        let len = 1usize << num_qubits;
        if index >= len {
            return Err(Error::Validation(format!(
                "basis index {index} does not fit in {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Wraps an amplitude vector. The length must be a power of two and the
    /// squared norm must be 1 within [`STATE_TOL`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Size(format!(
                "amplitude vector of length {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_register_size(num_qubits)?;
        let state = Self { num_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::Validation(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn check_qubit(&self, q: Qubit) -> Result<()> {
        if q.0 >= self.num_qubits {
            return Err(Error::Index {
                index: q.0,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Cyclic shift of the whole amplitude vector by one index:
    /// `new[k] = old[(k + 1) mod 2^m]`.
    pub fn apply_decrement(&mut self) {
        self.amps.rotate_left(1);
    }

    /// Removes qubit `q`, which must be in a computational basis state.
    ///
    /// Every amplitude on the opposite bit value has to be below
    /// [`STATE_TOL`] in magnitude; the remaining register is renormalized.
    pub fn discard_qubit(&self, q: Qubit) -> Result<StateVector> {
        self.check_qubit(q)?;
        if self.num_qubits == 1 {
            return Err(Error::Size("cannot discard the only qubit of a register".into()));
        }
        let bit = q.mask();
        let weight_one: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(k, _)| k & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        let value = usize::from(weight_one > 0.5);
        let stray = self
            .amps
            .iter()
            .enumerate()
            .filter(|(k, _)| ((k & bit) != 0) != (value == 1))
            .map(|(_, a)| a.norm())
            .fold(0.0, f64::max);
        if stray >= STATE_TOL {
            return Err(Error::Contract(format!(
                "qubit {} is not in a basis state (stray amplitude {stray:e})",
                q.0
            )));
        }

        let low = bit - 1;
        let half = self.amps.len() / 2;
        let mut amps = Vec::with_capacity(half);
        for k in 0..half {
            let idx = ((k & !low) << 1) | (value << q.0) | (k & low);
            amps.push(self.amps[idx]);
        }
        let mut out = StateVector {
            num_qubits: self.num_qubits - 1,
            amps,
        };
        out.renormalize()?;
        Ok(out)
    }

    /// Adds a fresh qubit in `|value>` as the new qubit 0; existing qubits
    /// move up by one.
    pub fn prepend_qubit(&self, value: u8) -> Result<StateVector> {
        check_register_size(self.num_qubits + 1)?;
        let zero = Complex64::new(0.0, 0.0);
        let mut amps = Vec::with_capacity(self.amps.len() * 2);
        for &a in &self.amps {
            if value == 0 {
                amps.push(a);
                amps.push(zero);
            } else {
                amps.push(zero);
                amps.push(a);
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits + 1,
            amps,
        })
    }

    pub(crate) fn renormalize(&mut self) -> Result<()> {
        let norm = self.norm_sqr().sqrt();
        if norm <= PROB_FLOOR {
            return Err(Error::Contract("cannot renormalize a zero vector".into()));
        }
        let inv = 1.0 / norm;
        self.amps.iter_mut().for_each(|a| *a *= inv);
        Ok(())
    }

    #[inline]
    pub(crate) fn debug_check_norm(&self) {
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() < STATE_TOL,
            "norm drifted to {}",
            self.norm_sqr()
        );
    }
}

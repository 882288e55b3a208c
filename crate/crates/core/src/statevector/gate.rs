use num_complex::Complex64;

use super::{Qubit, StateVector, STATE_TOL};
use crate::error::{Error, Result};

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2(pub [[Complex64; 2]; 2]);

impl Gate2 {
    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        let c = |x| Complex64::new(x, 0.0);
        Gate2([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real([[h, h], [h, -h]])
    }

    pub fn pauli_x() -> Self {
        Self::from_real([[0.0, 1.0], [1.0, 0.0]])
    }

    /// `Ry(angle) = [[cos(angle/2), -sin(angle/2)], [sin(angle/2), cos(angle/2)]]`.
    pub fn ry(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Self::from_real([[c, -s], [s, c]])
    }

    /// `U U^dagger = I` entry-wise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let m = &self.0;
        (0..2).all(|i| {
            (0..2).all(|j| {
                let dot = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
                let expect = if i == j { 1.0 } else { 0.0 };
                (dot - Complex64::new(expect, 0.0)).norm() <= tol
            })
        })
    }

    #[inline]
    fn apply_pair(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }
}

/// Visits every index whose bits under `fixed_mask` equal `fixed_value`,
/// enumerating only the free bits.
fn for_each_in_subspace(len: usize, fixed_mask: usize, fixed_value: usize, mut f: impl FnMut(usize)) {
    let free = (len - 1) & !fixed_mask;
    let mut sub = 0usize;
    loop {
        f(sub | fixed_value);
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
}

impl StateVector {
    /// Applies a single-qubit unitary to qubit `q`.
    pub fn apply_single_qubit(&mut self, q: Qubit, gate: &Gate2) -> Result<()> {
        self.check_qubit(q)?;
        if !gate.is_unitary(STATE_TOL) {
            return Err(Error::Validation(format!("gate {gate:?} is not unitary")));
        }
        let bit = q.mask();
        let len = self.amps.len();
        for base in (0..len).step_by(bit << 1) {
            for k in base..base + bit {
                let (a0, a1) = gate.apply_pair(self.amps[k], self.amps[k | bit]);
                self.amps[k] = a0;
                self.amps[k | bit] = a1;
            }
        }
        self.debug_check_norm();
        Ok(())
    }

    pub fn apply_h(&mut self, q: Qubit) -> Result<()> {
        self.apply_single_qubit(q, &Gate2::hadamard())
    }

    /// Pauli X on qubit `q` (an exact amplitude swap).
    pub fn apply_x(&mut self, q: Qubit) -> Result<()> {
        self.check_qubit(q)?;
        self.apply_x_mask(q.mask());
        Ok(())
    }

    /// X on every qubit whose bit is set in `mask`: `|k> -> |k ^ mask>`.
    pub fn apply_x_mask(&mut self, mask: usize) {
        let mask = mask & (self.amps.len() - 1);
        if mask == 0 {
            return;
        }
        for k in 0..self.amps.len() {
            let j = k ^ mask;
            if k < j {
                self.amps.swap(k, j);
            }
        }
    }

    /// `Ry(angle)` on `target`, restricted to the subspace where every
    /// control qubit is `|1>`.
    pub fn apply_multi_controlled_ry(&mut self, controls: &[Qubit], target: Qubit, angle: f64) -> Result<()> {
        self.check_qubit(target)?;
        let mut ctrl_mask = 0usize;
        for &c in controls {
            self.check_qubit(c)?;
            if c == target || ctrl_mask & c.mask() != 0 {
                return Err(Error::Validation(format!(
                    "control qubits {controls:?} and target {target:?} must be pairwise distinct"
                )));
            }
            ctrl_mask |= c.mask();
        }
        let gate = Gate2::ry(angle);
        let tbit = target.mask();
        let amps = &mut self.amps;
        for_each_in_subspace(amps.len(), ctrl_mask | tbit, ctrl_mask, |k| {
            let (a0, a1) = gate.apply_pair(amps[k], amps[k | tbit]);
            amps[k] = a0;
            amps[k | tbit] = a1;
        });
        self.debug_check_norm();
        Ok(())
    }
}

use super::image::{check_side, AngleVector};
use crate::error::{Error, Result};
use crate::statevector::{Qubit, StateVector};

/// X pattern `P_i` that maps the all-ones position `|4^n - 1>` onto `|i>`:
/// an X on every position qubit whose bit in `i` is 0.
pub fn conjugation_mask(i: usize, n: usize) -> usize {
    let full = (1usize << (2 * n)) - 1;
    !i & full
}

fn side_exponent(len: usize) -> Result<usize> {
    if len < 4 || !len.is_power_of_two() || !len.trailing_zeros().is_multiple_of(2) {
        return Err(Error::Size(format!(
            "{len} angles is not 4^n for any n >= 1"
        )));
    }
    check_side(1 << (len.trailing_zeros() / 2))
}

/// Synthesizes the FRQI state on `2n + 1` qubits.
///
/// Position qubits are `0..2n`, the color qubit is `2n`. The circuit is
/// `H` on every position qubit followed by one `P_i C^{2n}Ry(2 theta_i) P_i`
/// block per pixel. Blocks are visited in Gray-code order so that the
/// trailing `P_i` of one block and the leading `P_j` of the next fuse into a
/// single X; the rotations commute, so the order does not change the state.
pub fn frqi_encode(angles: &AngleVector) -> Result<StateVector> {
    let n = side_exponent(angles.len())?;
    let pos_qubits = 2 * n;
    let mut state = StateVector::zero_state(pos_qubits + 1)?;
    for q in 0..pos_qubits {
        state.apply_h(Qubit(q))?;
    }

    let controls: Vec<Qubit> = (0..pos_qubits).map(Qubit).collect();
    let color = Qubit(pos_qubits);
    let theta = angles.as_slice();
    let mut applied = 0usize;
    for g in 0..theta.len() {
        let i = g ^ (g >> 1);
        let mask = conjugation_mask(i, n);
        state.apply_x_mask(applied ^ mask);
        applied = mask;
        state.apply_multi_controlled_ry(&controls, color, 2.0 * theta[i])?;
    }
    state.apply_x_mask(applied);
    Ok(state)
}

/// Recovers `theta_i = atan2(amp(1, i), amp(0, i))` from an FRQI state.
pub fn frqi_decode(state: &StateVector) -> Result<AngleVector> {
    let m = state.num_qubits();
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "a {m}-qubit state is not a 2n+1 qubit FRQI register"
        )));
    }
    let pixels = 1usize << (m - 1);
    let expect = 1.0 / pixels as f64;
    let amps = state.amplitudes();
    let mut angles = Vec::with_capacity(pixels);
    for i in 0..pixels {
        let (a0, a1) = (amps[i], amps[i + pixels]);
        let weight = a0.norm_sqr() + a1.norm_sqr();
        if (weight - expect).abs() > 1e-8 {
            return Err(Error::Contract(format!(
                "position {i} carries weight {weight}, expected {expect}"
            )));
        }
        angles.push(a1.re.atan2(a0.re));
    }
    AngleVector::new(angles).map_err(|e| Error::Contract(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn re(s: &StateVector) -> Vec<f64> {
        s.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn all_zero_angles() {
        let s = frqi_encode(&AngleVector::new(vec![0.0; 4]).unwrap()).unwrap();
        let amps = re(&s);
        for (k, a) in amps.iter().enumerate() {
            let expect = if k < 4 { 0.5 } else { 0.0 };
            assert!((a - expect).abs() < 1e-15, "{amps:?}");
        }
    }

    #[test]
    fn all_right_angles() {
        let s = frqi_encode(&AngleVector::new(vec![FRAC_PI_2; 4]).unwrap()).unwrap();
        let amps = re(&s);
        for (k, a) in amps.iter().enumerate() {
            let expect = if k < 4 { 0.0 } else { 0.5 };
            assert!((a - expect).abs() < 1e-15, "{amps:?}");
        }
    }

    #[test]
    fn bad_angle_count() {
        for len in [1, 2, 3, 8, 12] {
            let a = AngleVector::new(vec![0.0; len]).unwrap();
            assert!(matches!(frqi_encode(&a), Err(Error::Size(_))), "len {len}");
        }
    }

    #[test]
    fn conjugation_maps_all_ones_to_i() {
        for n in 1..=3 {
            let all_ones = (1usize << (2 * n)) - 1;
            for i in 0..=all_ones {
                assert_eq!(all_ones ^ conjugation_mask(i, n), i);
                let mut s = StateVector::basis_state(2 * n, all_ones).unwrap();
                s.apply_x_mask(conjugation_mask(i, n));
                assert_eq!(s.amplitudes()[i].re, 1.0);
            }
        }
    }

    #[test]
    fn decode_zero_sin_branch() {
        let s = StateVector::from_real(&[0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(frqi_decode(&s).unwrap().as_slice(), &[0.0; 4]);
    }

    #[test]
    fn decode_rejects_non_frqi() {
        let mut amps = vec![0.0; 8];
        amps[0] = FRAC_1_SQRT_2;
        amps[7] = FRAC_1_SQRT_2;
        let s = StateVector::from_real(&amps).unwrap();
        assert!(matches!(frqi_decode(&s), Err(Error::Contract(_))));
    }
}

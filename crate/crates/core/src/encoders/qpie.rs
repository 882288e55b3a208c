use num_complex::Complex64;

use super::image::GrayImage;
use crate::error::{Error, Result};
use crate::statevector::{StateVector, STATE_TOL};

/// Amplitude encoding: `amp[i] = I_i / sqrt(sum_j I_j^2)` on `2n` qubits.
pub fn qpie_encode(img: &GrayImage) -> Result<StateVector> {
    let norm = img.pixels().iter().map(|p| p * p).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::DegenerateInput(
            "an all-zero image has no amplitude encoding".into(),
        ));
    }
    let amps = img
        .pixels()
        .iter()
        .map(|&p| Complex64::new(p / norm, 0.0))
        .collect();
    StateVector::from_amplitudes(amps)
}

/// Reads an amplitude-encoded image back, rescaled so the brightest pixel
/// is 1. The original global scale is not recoverable.
pub fn qpie_decode(state: &StateVector) -> Result<GrayImage> {
    let m = state.num_qubits();
    if !m.is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "a {m}-qubit state does not hold a square image"
        )));
    }
    let mut values = Vec::with_capacity(state.len());
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.im.abs() > STATE_TOL || a.re < -STATE_TOL {
            return Err(Error::Contract(format!(
                "amplitude {i} = {a} is not real and non-negative"
            )));
        }
        values.push(a.re.max(0.0));
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    let pixels = values.iter().map(|v| (v / max).min(1.0)).collect();
    GrayImage::new(1 << (m / 2), pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn diagonal_image() {
        let img = GrayImage::new(2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let s = qpie_encode(&img).unwrap();
        let re: Vec<f64> = s.amplitudes().iter().map(|a| a.re).collect();
        for (a, b) in re.iter().zip([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(s.num_qubits(), 2);
    }

    #[test]
    fn uniform_image() {
        let s = qpie_encode(&GrayImage::filled(2, 1.0).unwrap()).unwrap();
        assert!(s.amplitudes().iter().all(|a| a.re == 0.5 && a.im == 0.0));
        assert_eq!(qpie_decode(&s).unwrap().pixels(), &[1.0; 4]);
    }

    #[test]
    fn black_image_is_degenerate() {
        let img = GrayImage::filled(2, 0.0).unwrap();
        assert!(matches!(qpie_encode(&img), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn negative_amplitude_rejected() {
        let s = StateVector::from_real(&[0.5, -0.5, 0.5, 0.5]).unwrap();
        assert!(matches!(qpie_decode(&s), Err(Error::Contract(_))));
        let s = StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        assert!(matches!(qpie_decode(&s), Err(Error::Contract(_))));
    }
}

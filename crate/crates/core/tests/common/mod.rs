//! Test-only oracles. Nothing here calls into the simulator's gate or scan
//! code; they rebuild the expected quantities from dense matrices or closed
//! forms.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qedge::encoders::GrayImage;
use qedge::statevector::StateVector;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| c(if i == j { 1.0 } else { 0.0 })).collect())
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matvec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn ry_matrix(angle: f64) -> Matrix {
    let (s, co) = (angle / 2.0).sin_cos();
    vec![vec![c(co), c(-s)], vec![c(s), c(co)]]
}

/// `U` acting on qubit `q` of an `m`-qubit register, as the Kronecker
/// product `I ⊗ ... ⊗ U ⊗ ... ⊗ I` with qubit `m-1` leftmost.
pub fn embed_single(m: usize, q: usize, u: &Matrix) -> Matrix {
    let mut out = identity(1);
    for k in (0..m).rev() {
        out = if k == q { kron(&out, u) } else { kron(&out, &identity(2)) };
    }
    out
}

/// `I + (U - I) ⊗ |1..1><1..1|_controls`, built entry by entry.
pub fn controlled_matrix(m: usize, controls: &[usize], target: usize, u: &Matrix) -> Matrix {
    let dim = 1 << m;
    let mut out = identity(dim);
    let cmask: usize = controls.iter().map(|&q| 1 << q).sum();
    let tbit = 1 << target;
    for (row, out_row) in out.iter_mut().enumerate() {
        if row & cmask != cmask {
            continue;
        }
        for (col, entry) in out_row.iter_mut().enumerate() {
            if (row & !tbit) != (col & !tbit) {
                continue;
            }
            let (r, cc) = (usize::from(row & tbit != 0), usize::from(col & tbit != 0));
            *entry = u[r][cc];
        }
    }
    out
}

/// The cyclic shift matrix with ones on the superdiagonal and in the
/// bottom-left corner.
pub fn decrement_matrix(dim: usize) -> Matrix {
    let mut m = vec![vec![c(0.0); dim]; dim];
    for i in 0..dim {
        m[i][(i + 1) % dim] = c(1.0);
    }
    m
}

pub fn random_state(rng: &mut impl Rng, m: usize) -> StateVector {
    let amps: Vec<Complex64> = (0..1 << m)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

pub fn random_real_unit(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..len).map(|_| rng.random::<f64>() + 1e-3).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

pub fn random_image(rng: &mut impl Rng, side: usize) -> GrayImage {
    GrayImage::new(side, (0..side * side).map(|_| rng.random::<f64>()).collect()).unwrap()
}

/// Intensities drawn from a handful of levels inside `[lo, hi]`, so that
/// equal neighbors (zero differences) occur.
pub fn random_level_image(rng: &mut impl Rng, side: usize, lo: f64, hi: f64, levels: usize) -> GrayImage {
    let px = (0..side * side)
        .map(|_| {
            let k = rng.random_range(0..levels);
            lo + (hi - lo) * k as f64 / (levels - 1) as f64
        })
        .collect();
    GrayImage::new(side, px).unwrap()
}

/// FRQI amplitudes evaluated directly: `cos(theta_i)/2^n` at `|0>|i>` and
/// `sin(theta_i)/2^n` at `|1>|i>`, color as the top bit.
pub fn frqi_formula(angles: &[f64]) -> Vec<f64> {
    let pixels = angles.len();
    let scale = 1.0 / (pixels as f64).sqrt();
    let mut out = vec![0.0; 2 * pixels];
    for (i, t) in angles.iter().enumerate() {
        out[i] = t.cos() * scale;
        out[pixels + i] = t.sin() * scale;
    }
    out
}

/// `((c_i + c_{i+1})/2, (c_i - c_{i+1})/2)` interleaved, cyclic.
pub fn qhed_formula(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    (0..n)
        .flat_map(|i| {
            let next = c[(i + 1) % n];
            [(c[i] + next) / 2.0, (c[i] - next) / 2.0]
        })
        .collect()
}

/// Clipped horizontal differences of a real amplitude vector, row-major.
pub fn clipped_differences(c: &[f64], side: usize) -> Vec<f64> {
    (0..side * side)
        .map(|i| if i % side == side - 1 { 0.0 } else { (c[i] - c[i + 1]) / 2.0 })
        .collect()
}

pub fn normalized(values: &[f64]) -> Vec<f64> {
    let norm = values.iter().map(|x| x * x).sum::<f64>().sqrt();
    values.iter().map(|x| x / norm).collect()
}

/// Binary image with ones on `[top, top+h) x [left, left+w)`.
pub fn rectangle(side: usize, top: usize, left: usize, h: usize, w: usize) -> GrayImage {
    let px = (0..side * side)
        .map(|i| {
            let (r, col) = (i / side, i % side);
            if (top..top + h).contains(&r) && (left..left + w).contains(&col) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    GrayImage::new(side, px).unwrap()
}

/// Pixels outside the rectangle that share a side with it.
pub fn outer_ring(side: usize, top: usize, left: usize, h: usize, w: usize) -> Vec<(usize, usize)> {
    let inside = |r: isize, c: isize| {
        r >= top as isize && r < (top + h) as isize && c >= left as isize && c < (left + w) as isize
    };
    let mut out = vec![];
    for r in 0..side as isize {
        for col in 0..side as isize {
            if inside(r, col) {
                continue;
            }
            let touches = [(-1, 0), (1, 0), (0, -1), (0, 1)]
                .iter()
                .any(|(dr, dc)| inside(r + dr, col + dc));
            if touches {
                out.push((r as usize, col as usize));
            }
        }
    }
    out
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn real_parts(s: &StateVector) -> Vec<f64> {
    s.amplitudes().iter().map(|a| a.re).collect()
}

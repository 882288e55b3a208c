//! Classical post-processing of difference grids into binary edge maps.

use serde::{Deserialize, Serialize};

use crate::encoders::transpose;
use crate::error::{Error, Result};
use crate::qhed::{BoundaryMode, DifferenceGrid, ScanDirection};

/// Floor used by the plain detector: anything above numerical zero is an edge.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// How the maximum pixel difference is reduced to a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdRule {
    /// `|max_i (c_i - c_{i+1})| / 2n`: magnitude of the largest signed difference.
    #[default]
    SignedMax,
    /// `max_i |c_i - c_{i+1}| / 2n`.
    MaxAbs,
}

/// Where the reference sign for the shift rule comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FirstEdge {
    /// First above-threshold difference of the whole scan.
    #[default]
    PerGrid,
    /// First above-threshold difference of each scan line.
    PerRow,
}

/// Dynamic noise threshold compared against the stored differences `d_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: f64,
    pub n: usize,
}

impl Threshold {
    /// A user-supplied threshold.
    pub fn fixed(value: f64, n: usize) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Validation(format!("threshold {value} must be a finite non-negative number")));
        }
        Ok(Self { value, n })
    }
}

pub fn compute_threshold(grid: &DifferenceGrid) -> Threshold {
    compute_threshold_with(grid, ThresholdRule::SignedMax)
}

/// `thr = |max_i (c_i - c_{i+1})| / 2n` with `c_i - c_{i+1} = 2 d_i`.
/// Clipped entries do not take part in the maximum.
pub fn compute_threshold_with(grid: &DifferenceGrid, rule: ThresholdRule) -> Threshold {
    let n = grid.n();
    let raw = grid
        .values()
        .iter()
        .enumerate()
        .filter(|&(i, _)| grid.boundary() == BoundaryMode::Cyclic || !grid.is_trailing(i))
        .map(|(_, d)| 2.0 * d);
    let max = match rule {
        ThresholdRule::SignedMax => raw.fold(f64::NEG_INFINITY, f64::max),
        ThresholdRule::MaxAbs => raw.map(f64::abs).fold(0.0, f64::max),
    };
    let value = if max.is_finite() { max.abs() / (2 * n) as f64 } else { 0.0 };
    Threshold { value, n }
}

/// Binary edge map, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeMap {
    side: usize,
    bits: Vec<bool>,
}

impl EdgeMap {
    pub fn new(side: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != side * side {
            return Err(Error::Size(format!(
                "{} bits do not form a {side}x{side} map",
                bits.len()
            )));
        }
        Ok(Self { side, bits })
    }

    pub fn empty(side: usize) -> Self {
        Self {
            side,
            bits: vec![false; side * side],
        }
    }

    pub fn from_positions(side: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut map = Self::empty(side);
        for (row, col) in positions {
            map.bits[row * side + col] = true;
        }
        map
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.side + col]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Set pixels as `(row, col)`.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| (i / self.side, i % self.side))
            .collect()
    }

    /// Edges as 255 on a 0 background.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect()
    }
}

/// Pixel-wise OR of two maps.
pub fn superimpose(h: &EdgeMap, v: &EdgeMap) -> Result<EdgeMap> {
    if h.side != v.side {
        return Err(Error::Validation(format!(
            "cannot superimpose a {0}x{0} map with a {1}x{1} map",
            h.side, v.side
        )));
    }
    Ok(EdgeMap {
        side: h.side,
        bits: h.bits.iter().zip(&v.bits).map(|(a, b)| a | b).collect(),
    })
}

/// Plain detector: pixel `i` is an edge iff `|d_i| > epsilon`.
pub fn detect_edges_traditional(grid: &DifferenceGrid, epsilon: f64) -> EdgeMap {
    EdgeMap {
        side: grid.side(),
        bits: grid.values().iter().map(|d| d.abs() > epsilon).collect(),
    }
}

/// Indices (image orientation) whose difference exceeds the threshold.
pub fn edge_candidates(grid: &DifferenceGrid, thr: &Threshold) -> Vec<usize> {
    grid.values()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.abs() > thr.value)
        .map(|(i, _)| i)
        .collect()
}

pub fn detect_edges_modified(grid: &DifferenceGrid, thr: &Threshold) -> EdgeMap {
    detect_edges_modified_with(grid, thr, FirstEdge::PerGrid)
}

/// Outline detector.
///
/// Walks the grid in scan order. The first difference above the threshold
/// fixes a reference sign. A difference with the reference sign marks its
/// own pixel; one with the opposite sign marks the next pixel along the
/// scan line instead (dropped at the line end) and never its own pixel, so
/// opposite-sign differences below `-thr` in the reference frame do not
/// survive as noise.
pub fn detect_edges_modified_with(grid: &DifferenceGrid, thr: &Threshold, first_edge: FirstEdge) -> EdgeMap {
    let side = grid.side();
    let values = grid.scan_order();
    let mut marks = vec![false; side * side];
    let mut reference: Option<bool> = None;
    for row in 0..side {
        if first_edge == FirstEdge::PerRow {
            reference = None;
        }
        for col in 0..side {
            let i = row * side + col;
            let d = values[i];
            if d.abs() <= thr.value {
                continue;
            }
            let positive = d > 0.0;
            let reference = *reference.get_or_insert(positive);
            if positive == reference {
                marks[i] = true;
            } else if col + 1 < side {
                marks[i + 1] = true;
            }
        }
    }
    let bits = match grid.direction() {
        ScanDirection::Horizontal => marks,
        ScanDirection::Vertical => transpose(&marks, side),
    };
    EdgeMap { side, bits }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(side: usize, values: Vec<f64>, direction: ScanDirection) -> DifferenceGrid {
        DifferenceGrid::new(side, values, direction, BoundaryMode::Clipped).unwrap()
    }

    #[test]
    fn threshold_examples() {
        // 4x4 grid, largest raw difference 0.5 -> d = 0.25
        let mut v = vec![0.0; 16];
        v[1] = 0.25;
        v[6] = -0.4;
        let thr = compute_threshold(&grid(4, v.clone(), ScanDirection::Horizontal));
        assert!((thr.value - 0.125).abs() < 1e-12);
        let thr = compute_threshold_with(&grid(4, v, ScanDirection::Horizontal), ThresholdRule::MaxAbs);
        assert!((thr.value - 0.2).abs() < 1e-12);

        let flat = compute_threshold(&grid(4, vec![0.0; 16], ScanDirection::Vertical));
        assert_eq!(flat.value, 0.0);
    }

    #[test]
    fn threshold_ignores_cyclic_wrap_when_clipped() {
        let mut v = vec![0.0; 4];
        v[1] = 0.3;
        let cyclic = DifferenceGrid::new(2, v.clone(), ScanDirection::Horizontal, BoundaryMode::Cyclic).unwrap();
        assert!((compute_threshold(&cyclic).value - 0.3).abs() < 1e-15);
        let clipped = grid(2, v, ScanDirection::Horizontal);
        assert_eq!(compute_threshold(&clipped).value, 0.0);
    }

    #[test]
    fn fixed_threshold_validation() {
        assert!(Threshold::fixed(0.1, 2).is_ok());
        assert!(Threshold::fixed(-0.1, 2).is_err());
        assert!(Threshold::fixed(f64::NAN, 2).is_err());
    }

    #[test]
    fn traditional_examples() {
        let g = grid(2, vec![0.35, 0.0, 0.35, 0.0], ScanDirection::Horizontal);
        let m = detect_edges_traditional(&g, DEFAULT_EPSILON);
        assert_eq!(m.positions(), vec![(0, 0), (1, 0)]);
        assert!(detect_edges_traditional(&g, 0.5).is_empty());
        let zero = grid(2, vec![0.0; 4], ScanDirection::Horizontal);
        assert!(detect_edges_traditional(&zero, DEFAULT_EPSILON).is_empty());
    }

    #[test]
    fn modified_shifts_opposite_sign() {
        // rising into a bright run [2, 3] then falling out of it
        let mut v = vec![0.0; 64];
        v[1] = -0.4;
        v[3] = 0.4;
        let g = grid(8, v, ScanDirection::Horizontal);
        let thr = compute_threshold(&g);
        assert!((thr.value - 0.8 / 6.0).abs() < 1e-12);
        let m = detect_edges_modified(&g, &thr);
        assert_eq!(m.positions(), vec![(0, 1), (0, 4)]);
    }

    #[test]
    fn modified_shift_past_line_end_dropped() {
        let mut v = vec![0.0; 16];
        v[0] = 0.3;
        v[2] = -0.3;
        let g = DifferenceGrid::new(4, v, ScanDirection::Horizontal, BoundaryMode::Cyclic).unwrap();
        // same-sign at 0, opposite sign at 2 shifts to 3
        let m = detect_edges_modified(&g, &Threshold::fixed(0.1, 2).unwrap());
        assert_eq!(m.positions(), vec![(0, 0), (0, 3)]);

        let mut v = vec![0.0; 16];
        v[0] = 0.3;
        v[3] = -0.3;
        let g = DifferenceGrid::new(4, v, ScanDirection::Horizontal, BoundaryMode::Cyclic).unwrap();
        let m = detect_edges_modified(&g, &Threshold::fixed(0.1, 2).unwrap());
        assert_eq!(m.positions(), vec![(0, 0)]);
    }

    #[test]
    fn modified_vertical_shifts_down() {
        let mut v = vec![0.0; 16];
        // column 1: rising at row 0, falling at row 2
        v[1] = -0.3;
        v[2 * 4 + 1] = 0.3;
        let g = grid(4, v, ScanDirection::Vertical);
        let m = detect_edges_modified(&g, &Threshold::fixed(0.1, 2).unwrap());
        assert_eq!(m.positions(), vec![(0, 1), (3, 1)]);
    }

    #[test]
    fn modified_same_sign_matches_traditional() {
        let v: Vec<f64> = (0..16).map(|k| if k % 4 == 3 { 0.0 } else { (k % 5) as f64 * 0.05 }).collect();
        let g = grid(4, v, ScanDirection::Horizontal);
        let thr = Threshold::fixed(0.07, 2).unwrap();
        assert_eq!(detect_edges_modified(&g, &thr), detect_edges_traditional(&g, thr.value));
    }

    #[test]
    fn modified_zero_grid_is_empty() {
        let g = grid(4, vec![0.0; 16], ScanDirection::Horizontal);
        assert!(detect_edges_modified(&g, &compute_threshold(&g)).is_empty());
    }

    #[test]
    fn per_row_reference_sign() {
        let mut v = vec![0.0; 16];
        v[0] = 0.3;
        v[4] = -0.3;
        let g = grid(4, v, ScanDirection::Horizontal);
        let thr = Threshold::fixed(0.1, 2).unwrap();
        assert_eq!(detect_edges_modified(&g, &thr).positions(), vec![(0, 0), (1, 1)]);
        assert_eq!(
            detect_edges_modified_with(&g, &thr, FirstEdge::PerRow).positions(),
            vec![(0, 0), (1, 0)]
        );
    }

    #[test]
    fn threshold_is_strict() {
        let g = grid(2, vec![0.25, 0.0, 0.0, 0.0], ScanDirection::Horizontal);
        assert!(detect_edges_modified(&g, &Threshold::fixed(0.25, 1).unwrap()).is_empty());
    }

    #[test]
    fn superimpose_examples() {
        let a = EdgeMap::from_positions(4, [(0, 0)]);
        let b = EdgeMap::from_positions(4, [(2, 3)]);
        let e = EdgeMap::empty(4);
        assert_eq!(superimpose(&e, &a).unwrap(), a);
        assert_eq!(superimpose(&a, &a).unwrap(), a);
        assert_eq!(superimpose(&a, &b).unwrap().count(), 2);
        assert!(matches!(superimpose(&a, &EdgeMap::empty(2)), Err(Error::Validation(_))));
    }
}

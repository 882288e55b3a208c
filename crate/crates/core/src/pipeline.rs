//! End-to-end detection: both scans, thresholds, outline maps and their union.

use crate::encoders::GrayImage;
use crate::error::Result;
use crate::postprocess::{
    compute_threshold_with, detect_edges_modified_with, detect_edges_traditional, superimpose, EdgeMap, FirstEdge,
    Threshold, ThresholdRule, DEFAULT_EPSILON,
};
use crate::qhed::{scan, scan_qpie, BoundaryMode, DifferenceGrid, PipelineConfig, ScanDirection};
use crate::statevector::MeasurementRecord;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DetectConfig {
    pub pipeline: PipelineConfig,
    /// Replaces the computed threshold in both directions.
    pub threshold: Option<f64>,
    pub threshold_rule: ThresholdRule,
    pub first_edge: FirstEdge,
}

#[derive(Debug, Clone)]
pub struct DirectionReport {
    pub grid: DifferenceGrid,
    pub record: Option<MeasurementRecord>,
    pub threshold: Threshold,
    pub map: EdgeMap,
}

#[derive(Debug, Clone)]
pub struct EdgeReport {
    pub horizontal: DirectionReport,
    pub vertical: DirectionReport,
    pub edges: EdgeMap,
}

fn run_direction(img: &GrayImage, direction: ScanDirection, config: &DetectConfig) -> Result<DirectionReport> {
    let (grid, record) = scan(img, direction, &config.pipeline)?;
    let threshold = match config.threshold {
        Some(v) => Threshold::fixed(v, grid.n())?,
        None => compute_threshold_with(&grid, config.threshold_rule),
    };
    let map = detect_edges_modified_with(&grid, &threshold, config.first_edge);
    Ok(DirectionReport {
        grid,
        record,
        threshold,
        map,
    })
}

/// Horizontal scan, then vertical scan, each post-processed with the
/// outline detector and superimposed.
pub fn detect(img: &GrayImage, config: &DetectConfig) -> Result<EdgeReport> {
    let horizontal = run_direction(img, ScanDirection::Horizontal, config)?;
    let vertical = run_direction(img, ScanDirection::Vertical, config)?;
    let edges = superimpose(&horizontal.map, &vertical.map)?;
    Ok(EdgeReport {
        horizontal,
        vertical,
        edges,
    })
}

/// Baseline: amplitude-encoded scans marked wherever `|d_i| > epsilon`.
pub fn detect_traditional(img: &GrayImage, boundary: BoundaryMode, epsilon: f64) -> Result<EdgeMap> {
    let h = scan_qpie(img, ScanDirection::Horizontal, boundary)?;
    let v = scan_qpie(img, ScanDirection::Vertical, boundary)?;
    superimpose(&detect_edges_traditional(&h, epsilon), &detect_edges_traditional(&v, epsilon))
}

/// [`detect_traditional`] with the default numerical-zero floor.
pub fn detect_traditional_default(img: &GrayImage, boundary: BoundaryMode) -> Result<EdgeMap> {
    detect_traditional(img, boundary, DEFAULT_EPSILON)
}

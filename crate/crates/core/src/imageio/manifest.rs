use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::postprocess::{FirstEdge, ThresholdRule};
use crate::qhed::{AncillaPrep, BoundaryMode, Method, ScanDirection};
use crate::statevector::MeasurePolicy;

use super::PadMode;

/// Per-direction record of one scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub direction: ScanDirection,
    /// Measured branch of the color qubit (FRQI only).
    pub outcome: Option<u8>,
    pub probability: Option<f64>,
    pub threshold: f64,
    pub edge_pixels: usize,
}

/// Everything needed to rerun an `edges` invocation. Field order is the
/// serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub input: String,
    pub image_side: usize,
    pub method: Method,
    pub branch: MeasurePolicy,
    pub boundary: BoundaryMode,
    pub ancilla: AncillaPrep,
    pub first_edge: FirstEdge,
    pub threshold_rule: ThresholdRule,
    pub threshold_override: Option<f64>,
    pub pad: PadMode,
    pub rgb_angle: bool,
    pub scans: Vec<ScanEntry>,
    pub edge_pixels: usize,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<f64>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| crate::Error::Format(format!("manifest: {e}")))
    }
}

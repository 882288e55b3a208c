use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Qubit, StateVector, PROB_FLOOR};
use crate::error::{Error, Result};

/// How the outcome of a projective measurement is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "policy")]
pub enum MeasurePolicy {
    ForcedZero,
    ForcedOne,
    /// The more likely outcome; ties go to 0.
    #[default]
    MaxProb,
    /// Born-rule sample from a ChaCha8 stream seeded with `seed`.
    Sampled { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub qubit: usize,
    pub outcome: u8,
    /// Pre-collapse probability of `outcome`.
    pub probability: f64,
}

impl StateVector {
    /// Born probabilities `(P(0), P(1))` for a Z measurement of `q`.
    pub fn outcome_probabilities(&self, q: Qubit) -> Result<(f64, f64)> {
        self.check_qubit(q)?;
        let bit = q.mask();
        let (mut p0, mut p1) = (0.0, 0.0);
        for (k, a) in self.amps.iter().enumerate() {
            if k & bit == 0 {
                p0 += a.norm_sqr();
            } else {
                p1 += a.norm_sqr();
            }
        }
        Ok((p0, p1))
    }

    /// Projective Z measurement of qubit `q`.
    ///
    /// The state collapses onto the chosen outcome and is renormalized; the
    /// record keeps the pre-collapse probability.
    pub fn partial_measure(&mut self, q: Qubit, policy: MeasurePolicy) -> Result<MeasurementRecord> {
        let (p0, p1) = self.outcome_probabilities(q)?;
        let outcome: u8 = match policy {
            MeasurePolicy::ForcedZero => 0,
            MeasurePolicy::ForcedOne => 1,
            MeasurePolicy::MaxProb => u8::from(p1 > p0),
            MeasurePolicy::Sampled { seed } => {
                let u: f64 = ChaCha8Rng::seed_from_u64(seed).random();
                u8::from(u >= p0)
            }
        };
        let probability = if outcome == 0 { p0 } else { p1 };
        if probability <= PROB_FLOOR {
            return Err(Error::Measurement {
                qubit: q.0,
                outcome,
                probability,
            });
        }

        let bit = q.mask();
        let keep_set = outcome == 1;
        let scale = 1.0 / probability.sqrt();
        for (k, a) in self.amps.iter_mut().enumerate() {
            if ((k & bit) != 0) == keep_set {
                *a *= scale;
            } else {
                *a = num_complex::Complex64::new(0.0, 0.0);
            }
        }
        Ok(MeasurementRecord {
            qubit: q.0,
            outcome,
            probability,
        })
    }
}

//! Quantum image encodings and a modified Hadamard edge detector, simulated
//! on a dense statevector.
//!
//! The proposed pipeline is: FRQI-encode `arccos(I)`, measure the color
//! qubit, reuse it as the scan ancilla, run the Hadamard/decrement scan in
//! both directions, then threshold and outline the differences classically.

pub mod encoders;
pub mod error;
pub mod imageio;
pub mod pipeline;
pub mod postprocess;
pub mod qhed;
pub mod statevector;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};

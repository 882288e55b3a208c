//! Classical image <-> quantum state encodings.
//!
//! * QPIE: intensities as normalized amplitudes.
//! * FRQI: one angle per pixel on a color qubit entangled with the position register.
//! * NEQR: 8-bit levels as basis states of a value register.

mod color;
mod frqi;
mod image;
mod neqr;
mod qpie;

pub use color::{angle_to_rgb, intensities_to_angles, rgb_to_angle};
pub use frqi::{conjugation_mask, frqi_decode, frqi_encode};
pub use image::{AngleVector, GrayImage, RgbImage};
pub(crate) use image::transpose;
pub use neqr::{neqr_decode, neqr_encode, neqr_qubits, Neqr8State, NEQR_VALUE_BITS};
pub use qpie::{qpie_decode, qpie_encode};

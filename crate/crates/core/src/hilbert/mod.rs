//! Complex linear algebra on one- and two-qubit spaces.
//!
//! Joint states use big-endian product order: `|ij⟩` sits at index `2i + j`.

pub mod gates;
mod matrix;
mod operator;
pub mod random;
mod state;

pub use matrix::Matrix;
pub use operator::{apply, compose, UnitaryOperator};
pub use state::{born_prob, computational_labels, inner, kron_vec, tensor, MeasurementBasis, QuantumState};

pub type C64 = num_complex::Complex64;

/// Normalizes `amplitudes` and attaches `labels`.
pub fn make_state(
    amplitudes: alloc::vec::Vec<C64>,
    labels: alloc::vec::Vec<alloc::string::String>,
) -> crate::Result<QuantumState> {
    QuantumState::new(amplitudes, labels)
}

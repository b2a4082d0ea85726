//! The one-qubit penny-flip game.
//!
//! The coin starts heads up (`|0⟩`). The quantum player moves, the classical
//! player flips the coin (applies `X`) with probability `p`, and the quantum
//! player moves again. The quantum player wins if the coin measures heads.
//! The classical move is mixed at the probability level over its two branches.

use alloc::vec::Vec;

use crate::hilbert::gates::pauli_x;
use crate::hilbert::{QuantumState, UnitaryOperator};
use crate::{Error, Result};

/// Probability that the final measurement yields heads.
pub fn pennyflip_play(first: &UnitaryOperator, second: &UnitaryOperator, flip_prob: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&flip_prob) {
        return Err(Error::OutOfRange {
            what: "flip probability",
            value: flip_prob,
            min: 0.0,
            max: 1.0,
        });
    }
    for u in [first, second] {
        if u.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                found: u.dim(),
            });
        }
    }
    let heads = QuantumState::basis(2, 0)?;
    let after_first = first.apply(&heads)?;
    let stay = second.apply(&after_first)?;
    let flipped = second.apply(&pauli_x().apply(&after_first)?)?;
    let win_stay = heads.overlap(&stay)?;
    let win_flip = heads.overlap(&flipped)?;
    Ok((1.0 - flip_prob) * win_stay + flip_prob * win_flip)
}

/// `(p, win probability)` for `points` evenly spaced flip probabilities in `[0, 1]`.
pub fn pennyflip_sweep(first: &UnitaryOperator, second: &UnitaryOperator, points: usize) -> Result<Vec<(f64, f64)>> {
    if points < 2 {
        return Err(Error::InvalidConfig("flip-probability grid needs at least 2 points"));
    }
    (0..points)
        .map(|k| {
            let p = k as f64 / (points - 1) as f64;
            pennyflip_play(first, second, p).map(|w| (p, w))
        })
        .collect()
}

//! Two-player quantum games over a pair of spin-half particles.
//!
//! Each player chooses an initial single-qubit state together with a unitary,
//! and the payoff map sends a strategy profile `((a, U_A), (b, U_B))` to the
//! joint state `U_A U_B |ab⟩`. Players rank superpositions by how likely a
//! measurement in a fixed orthonormal basis is to land on their most preferred
//! basis element; an equilibrium state is one that is simultaneously optimal
//! for both players.
//!
//! Alongside the quantum game itself the crate carries the classical and
//! quantized-game machinery it is compared against: bimatrix games with mixed
//! extensions, an entangle/act/disentangle quantization of 2×2 games, and the
//! one-qubit penny-flip game.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classical;
mod error;
pub mod hilbert;
pub mod preference;
pub mod qgame;
pub mod quantize;
pub mod search;
pub mod tol;

pub use error::Error;
pub use hilbert::{MeasurementBasis, QuantumState, UnitaryOperator, C64};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// One of the two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }
}

impl core::fmt::Display for Player {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Player::A => f.write_str("A"),
            Player::B => f.write_str("B"),
        }
    }
}

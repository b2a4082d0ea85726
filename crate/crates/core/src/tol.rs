//! Numerical tolerances shared across the crate.

/// Allowed deviation of a state's squared norm from 1.
pub const NORM: f64 = 1e-12;
/// Norms below this are treated as the zero vector.
pub const ZERO_NORM: f64 = 1e-14;
/// Max elementwise deviation of `U†U` from the identity.
pub const UNITARY: f64 = 1e-10;
/// Max modulus of pairwise inner products in an orthonormal basis.
pub const ORTHOGONAL: f64 = 1e-12;
/// Born probabilities closer than this are considered tied.
pub const TIE: f64 = 1e-12;
/// Phase-class match tolerance when certifying equilibrium states.
pub const PHASE_MATCH: f64 = 1e-9;
/// Slack allowed before a sampled superposition refutes an equilibrium.
pub const REFUTE: f64 = 1e-9;
/// Default overlap deficit accepted by the Nash-profile check.
pub const NASH: f64 = 1e-9;
/// Probability vectors must sum to 1 within this.
pub const DISTRIBUTION: f64 = 1e-12;

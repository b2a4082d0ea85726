//! The two-player quantum game: payoff map, equilibrium states, and Nash
//! profiles.
//!
//! A strategy is an initial single-qubit state plus a unitary. The payoff map
//! sends `((a, U_A), (b, U_B))` to `U_A U_B |ab⟩` (player B's unitary acts
//! first). A state `E` is an equilibrium when, for every superposition `S`,
//! `|⟨M_A|E⟩|² ≥ |⟨M_A|S⟩|²` and `|⟨M_B|E⟩|² ≥ |⟨M_B|S⟩|²`. The supremum of
//! `|⟨M|S⟩|²` is 1 and is attained only on the ray of `M`, so an equilibrium
//! exists exactly when both players share a top element.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{random::random_state, tensor, MeasurementBasis, QuantumState, UnitaryOperator};
use crate::preference::{rank_outcome_distribution, PreferenceOrder};
use crate::{tol, Error, Player, Result};

/// Whether a player's unitary acts on the whole joint space or only on the
/// player's own qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyMode {
    /// Each unitary acts on `ℋ⊗ℋ`; outcome `U_A U_B |ab⟩`.
    Joint,
    /// Each unitary acts on one qubit; outcome `(U_A ⊗ U_B)|ab⟩`.
    Local,
}

impl StrategyMode {
    pub fn unitary_dim(self) -> usize {
        match self {
            StrategyMode::Joint => 4,
            StrategyMode::Local => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumGame {
    basis: MeasurementBasis,
    pref_a: PreferenceOrder,
    pref_b: PreferenceOrder,
    mode: StrategyMode,
}

impl QuantumGame {
    pub fn new(
        basis: MeasurementBasis,
        pref_a: PreferenceOrder,
        pref_b: PreferenceOrder,
        mode: StrategyMode,
    ) -> Result<Self> {
        if basis.dim() != 4 {
            return Err(Error::DimMismatch {
                expected: 4,
                found: basis.dim(),
            });
        }
        for p in [&pref_a, &pref_b] {
            if p.dim() != 4 {
                return Err(Error::DimMismatch {
                    expected: 4,
                    found: p.dim(),
                });
            }
        }
        Ok(QuantumGame {
            basis,
            pref_a,
            pref_b,
            mode,
        })
    }

    /// Game over the computational basis of two qubits.
    pub fn computational(pref_a: PreferenceOrder, pref_b: PreferenceOrder, mode: StrategyMode) -> Result<Self> {
        Self::new(MeasurementBasis::computational(4), pref_a, pref_b, mode)
    }

    pub fn basis(&self) -> &MeasurementBasis {
        &self.basis
    }

    pub fn mode(&self) -> StrategyMode {
        self.mode
    }

    pub fn preference(&self, player: Player) -> &PreferenceOrder {
        match player {
            Player::A => &self.pref_a,
            Player::B => &self.pref_b,
        }
    }

    /// The player's most preferred basis element `M_player`.
    pub fn top(&self, player: Player) -> &QuantumState {
        &self.basis.vectors()[self.preference(player).top_index()]
    }

    /// `|⟨M_player|s⟩|²`.
    pub fn overlap(&self, player: Player, s: &QuantumState) -> Result<f64> {
        self.top(player).overlap(s)
    }

    pub fn tops_coincide(&self) -> bool {
        self.pref_a.top_index() == self.pref_b.top_index()
    }
}

/// Initial qubit state plus unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Strategy {
    pub init: QuantumState,
    pub unitary: UnitaryOperator,
}

impl Strategy {
    pub fn new(init: QuantumState, unitary: UnitaryOperator) -> Result<Self> {
        if init.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                found: init.dim(),
            });
        }
        Ok(Strategy { init, unitary })
    }

    /// `|0⟩` with the identity of the given dimension.
    pub fn identity(unitary_dim: usize) -> Self {
        Strategy {
            init: QuantumState::basis(2, 0).expect("dim 2"),
            unitary: UnitaryOperator::identity(unitary_dim),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    pub a: Strategy,
    pub b: Strategy,
}

impl StrategyProfile {
    pub fn new(a: Strategy, b: Strategy) -> Self {
        StrategyProfile { a, b }
    }

    pub fn get(&self, player: Player) -> &Strategy {
        match player {
            Player::A => &self.a,
            Player::B => &self.b,
        }
    }

    /// The profile with `player`'s strategy replaced.
    pub fn with(&self, player: Player, strategy: Strategy) -> Self {
        let mut out = self.clone();
        match player {
            Player::A => out.a = strategy,
            Player::B => out.b = strategy,
        }
        out
    }
}

/// The outcome `U_A U_B |ab⟩` (joint mode) or `(U_A ⊗ U_B)|ab⟩` (local mode).
pub fn payoff_map(game: &QuantumGame, profile: &StrategyProfile) -> Result<QuantumState> {
    let want = game.mode.unitary_dim();
    for s in [&profile.a, &profile.b] {
        if s.unitary.dim() != want {
            return Err(Error::ModeMismatch {
                mode: game.mode,
                found: s.unitary.dim(),
            });
        }
    }
    let ab = tensor(&profile.a.init, &profile.b.init)?;
    match game.mode {
        StrategyMode::Joint => profile.a.unitary.compose(&profile.b.unitary)?.apply(&ab),
        StrategyMode::Local => profile.a.unitary.kron(&profile.b.unitary).apply(&ab),
    }
}

/// Representatives of every equilibrium phase class: `{M}` when both players
/// share the top element `M`, otherwise empty.
pub fn equilibrium_states(game: &QuantumGame) -> Vec<QuantumState> {
    if game.tops_coincide() {
        vec![game.top(Player::A).clone()]
    } else {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EquilibriumCertificate {
    /// `e` lies on the shared top ray and no sampled state beat it.
    Certified { samples: usize },
    /// `witness` overlaps `M_player` strictly more than `e` does.
    Refuted {
        witness: QuantumState,
        player: Player,
        witness_overlap: f64,
        state_overlap: f64,
    },
}

impl EquilibriumCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, EquilibriumCertificate::Certified { .. })
    }
}

/// Checks both equilibrium inequalities for `e`.
///
/// The candidate witnesses are the two top elements followed by `n_samples`
/// Haar-random states drawn from a generator seeded with `seed`. Certification
/// additionally requires `e` to match the shared top element up to phase.
pub fn is_equilibrium_state(
    game: &QuantumGame,
    e: &QuantumState,
    n_samples: usize,
    seed: u64,
) -> Result<EquilibriumCertificate> {
    if e.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            found: e.dim(),
        });
    }
    let e_a = game.overlap(Player::A, e)?;
    let e_b = game.overlap(Player::B, e)?;
    let refute = |s: &QuantumState| -> Result<Option<EquilibriumCertificate>> {
        for (player, own) in [(Player::A, e_a), (Player::B, e_b)] {
            let o = game.overlap(player, s)?;
            if o > own + tol::REFUTE {
                return Ok(Some(EquilibriumCertificate::Refuted {
                    witness: s.clone(),
                    player,
                    witness_overlap: o,
                    state_overlap: own,
                }));
            }
        }
        Ok(None)
    };
    for player in [Player::A, Player::B] {
        if let Some(r) = refute(game.top(player))? {
            return Ok(r);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_samples {
        if let Some(r) = refute(&random_state(&mut rng, 4))? {
            return Ok(r);
        }
    }
    let analytic = game.tops_coincide() && e.same_ray(game.top(Player::A), tol::PHASE_MATCH);
    if analytic {
        Ok(EquilibriumCertificate::Certified { samples: n_samples })
    } else {
        // Unreachable in exact arithmetic: if `e` is off the shared top ray,
        // that top element refutes it.
        let player = if e_a < e_b { Player::A } else { Player::B };
        Ok(EquilibriumCertificate::Refuted {
            witness: game.top(player).clone(),
            player,
            witness_overlap: 1.0,
            state_overlap: e_a.min(e_b),
        })
    }
}

/// Largest value of `min(|⟨M_A|S⟩|², |⟨M_B|S⟩|²)` over `n_samples` Haar-random `S`.
pub fn sampled_max_min_overlap(game: &QuantumGame, n_samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    for _ in 0..n_samples {
        let s = random_state(&mut rng, 4);
        let m = game.overlap(Player::A, &s)?.min(game.overlap(Player::B, &s)?);
        best = best.max(m);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NashVerdict {
    Nash {
        overlap: f64,
    },
    NotNash {
        overlap: f64,
    },
    /// The game has no equilibrium state, so no profile can be Nash.
    NoEquilibriumExists,
}

impl NashVerdict {
    pub fn is_nash(&self) -> bool {
        matches!(self, NashVerdict::Nash { .. })
    }
}

/// Whether `profile` maps onto the equilibrium ray: `|⟨E|𝒬(profile)⟩|² ≥ 1 − tol`.
pub fn is_nash_profile(game: &QuantumGame, profile: &StrategyProfile, tol: f64) -> Result<NashVerdict> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig("tolerance must be positive"));
    }
    let Some(e) = equilibrium_states(game).into_iter().next() else {
        return Ok(NashVerdict::NoEquilibriumExists);
    };
    let overlap = e.overlap(&payoff_map(game, profile)?)?;
    Ok(if overlap >= 1.0 - tol {
        NashVerdict::Nash { overlap }
    } else {
        NashVerdict::NotNash { overlap }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeReport {
    pub outcome: QuantumState,
    pub ranked_a: Vec<(String, f64)>,
    pub ranked_b: Vec<(String, f64)>,
    /// `|⟨M_A|outcome⟩|²`.
    pub overlap_a: f64,
    /// `|⟨M_B|outcome⟩|²`.
    pub overlap_b: f64,
}

pub fn outcome_report(game: &QuantumGame, profile: &StrategyProfile) -> Result<OutcomeReport> {
    let outcome = payoff_map(game, profile)?;
    Ok(OutcomeReport {
        ranked_a: rank_outcome_distribution(&game.pref_a, &game.basis, &outcome)?,
        ranked_b: rank_outcome_distribution(&game.pref_b, &game.basis, &outcome)?,
        overlap_a: game.overlap(Player::A, &outcome)?,
        overlap_b: game.overlap(Player::B, &outcome)?,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::gates::{cnot, hadamard, identity2, pauli_x};
    use crate::hilbert::C64;

    fn game(top_a: usize, top_b: usize, mode: StrategyMode) -> QuantumGame {
        QuantumGame::computational(
            PreferenceOrder::with_top(4, top_a).unwrap(),
            PreferenceOrder::with_top(4, top_b).unwrap(),
            mode,
        )
        .unwrap()
    }

    fn ket(k: usize) -> QuantumState {
        QuantumState::basis(2, k).unwrap()
    }

    fn strat(init: usize, u: UnitaryOperator) -> Strategy {
        Strategy::new(ket(init), u).unwrap()
    }

    fn bell() -> QuantumState {
        QuantumState::from_amplitudes(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn payoff_map_examples() {
        let g = game(3, 3, StrategyMode::Joint);
        let id4 = UnitaryOperator::identity(4);
        let p = StrategyProfile::new(strat(0, id4.clone()), strat(0, id4.clone()));
        assert!(payoff_map(&g, &p)
            .unwrap()
            .same_ray(&QuantumState::basis(4, 0).unwrap(), 1e-15));

        let xx = pauli_x().kron(&pauli_x());
        let p = StrategyProfile::new(strat(0, xx), strat(0, id4.clone()));
        assert!(payoff_map(&g, &p)
            .unwrap()
            .same_ray(&QuantumState::basis(4, 3).unwrap(), 1e-15));

        let p = StrategyProfile::new(strat(0, cnot()), strat(0, hadamard().kron(&identity2())));
        assert!(payoff_map(&g, &p).unwrap().same_ray(&bell(), 1e-12));
    }

    #[test]
    fn payoff_map_rejects_wrong_mode() {
        let g = game(3, 3, StrategyMode::Local);
        let id4 = UnitaryOperator::identity(4);
        let p = StrategyProfile::new(strat(0, id4.clone()), strat(0, id4));
        assert!(matches!(payoff_map(&g, &p), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn equilibrium_set_dichotomy() {
        let g = game(3, 3, StrategyMode::Joint);
        let e = equilibrium_states(&g);
        assert_eq!(e.len(), 1);
        assert!(e[0].same_ray(&QuantumState::basis(4, 3).unwrap(), 1e-15));
        assert!(equilibrium_states(&game(0, 3, StrategyMode::Joint)).is_empty());
    }

    #[test]
    fn equilibrium_certificates() {
        let g = game(3, 3, StrategyMode::Joint);
        let m = QuantumState::basis(4, 3).unwrap();
        assert!(is_equilibrium_state(&g, &m.with_phase(1.3), 2000, 1)
            .unwrap()
            .is_certified());

        match is_equilibrium_state(&g, &bell(), 2000, 1).unwrap() {
            EquilibriumCertificate::Refuted {
                witness,
                witness_overlap,
                ..
            } => {
                assert!(witness.same_ray(&m, 1e-15));
                assert!((witness_overlap - 1.0).abs() < 1e-15);
            }
            other => panic!("expected refutation, got {other:?}"),
        }

        let g = game(0, 3, StrategyMode::Joint);
        match is_equilibrium_state(&g, &QuantumState::basis(4, 0).unwrap(), 2000, 1).unwrap() {
            EquilibriumCertificate::Refuted { witness, player, .. } => {
                assert_eq!(player, Player::B);
                assert!(witness.same_ray(&m, 1e-15));
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn nash_profile_examples() {
        let g = game(3, 3, StrategyMode::Joint);
        let id4 = UnitaryOperator::identity(4);
        let p = StrategyProfile::new(strat(1, id4.clone()), strat(1, id4.clone()));
        assert!(is_nash_profile(&g, &p, tol::NASH).unwrap().is_nash());
        let p = StrategyProfile::new(strat(0, pauli_x().kron(&pauli_x())), strat(0, id4.clone()));
        assert!(is_nash_profile(&g, &p, tol::NASH).unwrap().is_nash());
        let p = StrategyProfile::new(strat(0, id4.clone()), strat(0, id4.clone()));
        assert!(matches!(
            is_nash_profile(&g, &p, tol::NASH).unwrap(),
            NashVerdict::NotNash { .. }
        ));
        let g = game(0, 3, StrategyMode::Joint);
        assert_eq!(
            is_nash_profile(&g, &p, tol::NASH).unwrap(),
            NashVerdict::NoEquilibriumExists
        );
        assert!(is_nash_profile(&g, &p, 0.0).is_err());
    }

    #[test]
    fn outcome_report_overlaps() {
        let g = game(0, 3, StrategyMode::Joint);
        let id4 = UnitaryOperator::identity(4);
        let p = StrategyProfile::new(strat(0, id4.clone()), strat(0, id4.clone()));
        let r = outcome_report(&g, &p).unwrap();
        assert!((r.overlap_a - 1.0).abs() < 1e-15);
        assert_eq!(r.ranked_a[0].0, "00");

        let g = game(3, 3, StrategyMode::Joint);
        let p = StrategyProfile::new(strat(0, cnot()), strat(0, hadamard().kron(&identity2())));
        let r = outcome_report(&g, &p).unwrap();
        assert!((r.overlap_a - 0.5).abs() < 1e-12);
    }
}

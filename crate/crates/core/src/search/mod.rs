//! Numerical search over parameterized strategy spaces.
//!
//! Each player's strategy is encoded as Bloch angles for the initial qubit
//! (unless pinned) followed by unitary coordinates: three angles in local
//! mode, sixteen generator coordinates in joint mode. Restart 0 starts from
//! `|0⟩` with the identity; later restarts start from seeded random points.
//!
//! [`find_nash_profile`] looks for a profile reaching the equilibrium state.
//! [`best_response`] and [`deviation_nash_check`] implement a
//! unilateral-deviation notion of equilibrium, which is an extension and not
//! the global equilibrium condition used by [`crate::qgame`].

mod nelder_mead;
mod params;

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use nelder_mead::{minimize, Minimum, NelderMeadOptions};
pub use params::{su2_from_params, su2_params_of, u4_from_params, UnitaryParams2, UnitaryParams4};

use crate::hilbert::{random::angle, QuantumState, UnitaryOperator};
use crate::qgame::{equilibrium_states, payoff_map, QuantumGame, Strategy, StrategyMode, StrategyProfile};
use crate::{Error, Player, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tol: f64,
    pub value_tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 16,
            max_iters: 20_000,
            step_tol: 1e-10,
            value_tol: 1e-6,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive"));
        }
        if !(self.step_tol > 0.0) || !self.step_tol.is_finite() {
            return Err(Error::InvalidConfig("step_tol must be positive"));
        }
        if !(self.value_tol > 0.0) || !self.value_tol.is_finite() {
            return Err(Error::InvalidConfig("value_tol must be positive"));
        }
        Ok(())
    }

    fn restart_rng(&self, restart: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(restart as u64);
        rng
    }
}

/// How a player's initial qubit enters the search.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitChoice {
    #[default]
    Free,
    Pinned(QuantumState),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchSpace {
    pub init_a: InitChoice,
    pub init_b: InitChoice,
}

impl SearchSpace {
    pub fn pinned(a: QuantumState, b: QuantumState) -> Self {
        SearchSpace {
            init_a: InitChoice::Pinned(a),
            init_b: InitChoice::Pinned(b),
        }
    }

    fn init(&self, player: Player) -> &InitChoice {
        match player {
            Player::A => &self.init_a,
            Player::B => &self.init_b,
        }
    }
}

/// Decodes one player's slice of the parameter vector.
#[derive(Debug, Clone)]
struct StrategyCoords {
    mode: StrategyMode,
    init: InitChoice,
}

impl StrategyCoords {
    fn len(&self) -> usize {
        let init = match self.init {
            InitChoice::Free => 2,
            InitChoice::Pinned(_) => 0,
        };
        init + unitary_len(self.mode)
    }

    fn decode(&self, x: &[f64]) -> Result<Strategy> {
        let (init, rest) = match &self.init {
            InitChoice::Free => (QuantumState::bloch(x[0], x[1]), &x[2..]),
            InitChoice::Pinned(s) => (s.clone(), x),
        };
        let unitary = decode_unitary(self.mode, rest)?;
        Strategy::new(init, unitary)
    }

    fn random_start<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<f64>) {
        if matches!(self.init, InitChoice::Free) {
            out.push(angle(rng) / 2.0);
            out.push(angle(rng));
        }
        match self.mode {
            StrategyMode::Local => (0..3).for_each(|_| out.push(angle(rng))),
            StrategyMode::Joint => (0..16).for_each(|_| out.push(angle(rng) - core::f64::consts::PI)),
        }
    }
}

fn unitary_len(mode: StrategyMode) -> usize {
    match mode {
        StrategyMode::Joint => 16,
        StrategyMode::Local => 3,
    }
}

fn decode_unitary(mode: StrategyMode, x: &[f64]) -> Result<UnitaryOperator> {
    match mode {
        StrategyMode::Local => Ok(su2_from_params(UnitaryParams2::new(x[0], x[1], x[2])?)),
        StrategyMode::Joint => u4_from_params(&UnitaryParams4::from_slice(&x[..16])?),
    }
}

/// Per-run bookkeeping; identical inputs give identical traces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchTrace {
    /// Best value reached so far after each restart (non-decreasing).
    pub best_after_restart: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NashSearch {
    /// `profile` maps onto the equilibrium ray with `overlap ≥ 1 − value_tol`.
    Found {
        profile: StrategyProfile,
        overlap: f64,
        /// Index of the restart that reached the target; 0 is the identity start.
        restart: usize,
        trace: SearchTrace,
    },
    NotFound {
        profile: StrategyProfile,
        overlap: f64,
        trace: SearchTrace,
    },
    NoEquilibriumExists,
}

struct Maximized {
    x: Vec<f64>,
    value: f64,
    restart: usize,
    reached: bool,
    trace: SearchTrace,
}

/// Maximizes `objective` over `restarts` Nelder–Mead runs. Stops early once a
/// value ≥ `goal` is reached. Ties keep the earliest restart.
fn maximize<F, S>(objective: F, mut start: S, dim: usize, goal: f64, cfg: &SearchConfig) -> Maximized
where
    F: Fn(&[f64]) -> f64,
    S: FnMut(usize, &mut ChaCha8Rng) -> Vec<f64>,
{
    let opts = NelderMeadOptions {
        max_iters: cfg.max_iters,
        step_tol: cfg.step_tol,
        target: 1.0 - goal,
        initial_step: 0.5,
    };
    let deficit = |x: &[f64]| 1.0 - objective(x);
    let mut best = Maximized {
        x: vec![0.0; dim],
        value: f64::NEG_INFINITY,
        restart: 0,
        reached: false,
        trace: SearchTrace::default(),
    };
    for r in 0..cfg.restarts {
        let mut rng = cfg.restart_rng(r);
        let x0 = start(r, &mut rng);
        let m = minimize(deficit, &x0, &opts);
        best.trace.iterations += m.iterations;
        best.trace.evaluations += m.evaluations;
        let value = 1.0 - m.value;
        if value > best.value {
            best.x = m.x;
            best.value = value;
            best.restart = r;
        }
        best.trace.best_after_restart.push(best.value);
        if best.value >= goal {
            best.reached = true;
            break;
        }
    }
    best
}

/// Searches for a Nash profile with free initial states.
pub fn find_nash_profile(game: &QuantumGame, cfg: &SearchConfig) -> Result<NashSearch> {
    find_nash_profile_in(game, &SearchSpace::default(), cfg)
}

/// Maximizes `|⟨E|𝒬(profile)⟩|²` over profiles in `space`.
pub fn find_nash_profile_in(game: &QuantumGame, space: &SearchSpace, cfg: &SearchConfig) -> Result<NashSearch> {
    cfg.validate()?;
    let Some(target) = equilibrium_states(game).into_iter().next() else {
        return Ok(NashSearch::NoEquilibriumExists);
    };
    let coords_a = StrategyCoords {
        mode: game.mode(),
        init: space.init(Player::A).clone(),
    };
    let coords_b = StrategyCoords {
        mode: game.mode(),
        init: space.init(Player::B).clone(),
    };
    let split = coords_a.len();
    let dim = split + coords_b.len();
    let decode = |x: &[f64]| -> Result<StrategyProfile> {
        Ok(StrategyProfile::new(
            coords_a.decode(&x[..split])?,
            coords_b.decode(&x[split..])?,
        ))
    };
    let objective = |x: &[f64]| {
        decode(x)
            .and_then(|p| payoff_map(game, &p))
            .and_then(|s| target.overlap(&s))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let start = |r: usize, rng: &mut ChaCha8Rng| {
        if r == 0 {
            return vec![0.0; dim];
        }
        let mut x = Vec::with_capacity(dim);
        coords_a.random_start(rng, &mut x);
        coords_b.random_start(rng, &mut x);
        x
    };
    let best = maximize(objective, start, dim, 1.0 - cfg.value_tol, cfg);
    let profile = decode(&best.x)?;
    let overlap = target.overlap(&payoff_map(game, &profile)?)?;
    Ok(if best.reached && overlap >= 1.0 - cfg.value_tol {
        NashSearch::Found {
            profile,
            overlap,
            restart: best.restart,
            trace: best.trace,
        }
    } else {
        NashSearch::NotFound {
            profile,
            overlap,
            trace: best.trace,
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub strategy: Strategy,
    /// The mover's `|⟨M_mover|𝒬⟩|²` at `strategy`.
    pub overlap: f64,
    pub restart: usize,
    pub trace: SearchTrace,
}

/// Maximizes the mover's own overlap with its top element, the opponent's
/// strategy held fixed.
pub fn best_response(game: &QuantumGame, mover: Player, fixed: &Strategy, cfg: &SearchConfig) -> Result<BestResponse> {
    cfg.validate()?;
    let coords = StrategyCoords {
        mode: game.mode(),
        init: InitChoice::Free,
    };
    let dim = coords.len();
    let profile_for = |s: Strategy| match mover {
        Player::A => StrategyProfile::new(s, fixed.clone()),
        Player::B => StrategyProfile::new(fixed.clone(), s),
    };
    let top = game.top(mover);
    let objective = |x: &[f64]| {
        coords
            .decode(x)
            .and_then(|s| payoff_map(game, &profile_for(s)))
            .and_then(|out| top.overlap(&out))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let start = |r: usize, rng: &mut ChaCha8Rng| {
        if r == 0 {
            return vec![0.0; dim];
        }
        let mut x = Vec::with_capacity(dim);
        coords.random_start(rng, &mut x);
        x
    };
    let best = maximize(objective, start, dim, 1.0 - 0.1 * cfg.value_tol, cfg);
    let strategy = coords.decode(&best.x)?;
    let overlap = top.overlap(&payoff_map(game, &profile_for(strategy.clone()))?)?;
    Ok(BestResponse {
        strategy,
        overlap,
        restart: best.restart,
        trace: best.trace,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeviationVerdict {
    NoImprovingDeviation {
        overlap_a: f64,
        overlap_b: f64,
    },
    ImprovingDeviation {
        player: Player,
        strategy: Strategy,
        gain: f64,
    },
}

/// Unilateral-deviation check: reports the larger improving deviation (A on
/// ties) when some player's best response beats its current overlap by more
/// than `value_tol`.
pub fn deviation_nash_check(
    game: &QuantumGame,
    profile: &StrategyProfile,
    cfg: &SearchConfig,
) -> Result<DeviationVerdict> {
    cfg.validate()?;
    let outcome = payoff_map(game, profile)?;
    let current_a = game.overlap(Player::A, &outcome)?;
    let current_b = game.overlap(Player::B, &outcome)?;
    let mut best: Option<(Player, Strategy, f64)> = None;
    for (player, current) in [(Player::A, current_a), (Player::B, current_b)] {
        let br = best_response(game, player, profile.get(player.other()), cfg)?;
        let gain = br.overlap - current;
        if gain > cfg.value_tol && best.as_ref().is_none_or(|(_, _, g)| gain > *g) {
            best = Some((player, br.strategy, gain));
        }
    }
    Ok(match best {
        Some((player, strategy, gain)) => DeviationVerdict::ImprovingDeviation { player, strategy, gain },
        None => DeviationVerdict::NoImprovingDeviation {
            overlap_a: current_a,
            overlap_b: current_b,
        },
    })
}

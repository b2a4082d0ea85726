//! Quantized 2×2 games in the entangle/act/disentangle protocol.
//!
//! Both players start on `|00⟩`. An entangling gate `J(γ) = exp(i·γ/2·D⊗D)` is
//! applied, each player acts locally with a single-qubit unitary, `J(γ)†`
//! undoes the entanglement, and the computational-basis outcome selects a
//! cell of the classical payoff table. At `γ = 0` the protocol reduces to the
//! classical game played with bit flips.

mod dynamics;
mod pennyflip;

use alloc::vec::Vec;

use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use dynamics::{mixed_best_response_dynamics, DynamicsConfig, DynamicsResult};
pub use pennyflip::{pennyflip_play, pennyflip_sweep};

use crate::classical::{check_distribution, ClassicalGame, MixedProfile};
use crate::hilbert::gates::pauli_x;
use crate::hilbert::{QuantumState, UnitaryOperator, C64};
use crate::search::{su2_from_params, UnitaryParams2};
use crate::{Error, Player, Result};

type Amp4 = [C64; 4];
type Mat2 = [[C64; 2]; 2];

/// `J(γ) = exp(i·γ/2·D⊗D) = cos(γ/2)·I + i·sin(γ/2)·D⊗D` with the flip
/// `D = U(π, 0, 0) = [[0, 1], [−1, 0]]`. On `|00⟩` this agrees with the
/// `X⊗X` generator, but only `D⊗D` commutes with `U(θ,φ)⊗U(θ,φ)` in the way
/// the two-parameter class needs.
pub fn ewl_entangler(gamma: f64) -> Result<UnitaryOperator> {
    check_gamma(gamma)?;
    let d = su2_from_params(UnitaryParams2::new(PI, 0.0, 0.0)?);
    let dd = d.kron(&d);
    let generator = dd.matrix().scale(C64::new(0.0, gamma / 2.0));
    UnitaryOperator::new(generator.exp())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2).contains(&gamma) {
        return Err(Error::OutOfRange {
            what: "gamma",
            value: gamma,
            min: 0.0,
            max: FRAC_PI_2,
        });
    }
    Ok(())
}

/// Pure-profile cell `(row, col)` paid out for each joint outcome `|00⟩..|11⟩`.
pub type OutcomeMap = [(usize, usize); 4];

/// `|ij⟩ ↦ (i, j)`.
pub const IDENTITY_OUTCOMES: OutcomeMap = [(0, 0), (0, 1), (1, 0), (1, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationScheme {
    base: ClassicalGame,
    gamma: f64,
    outcome_map: OutcomeMap,
    entangled: Amp4,
    disentangler: [Amp4; 4],
}

impl QuantizationScheme {
    pub fn new(base: ClassicalGame, gamma: f64, outcome_map: OutcomeMap) -> Result<Self> {
        if base.rows() != 2 || base.cols() != 2 {
            return Err(Error::ShapeMismatch {
                rows: base.rows(),
                cols: base.cols(),
            });
        }
        let mut seen = [false; 4];
        for &(i, j) in &outcome_map {
            if i > 1 || j > 1 || core::mem::replace(&mut seen[2 * i + j], true) {
                return Err(Error::InvalidPermutation { dim: 4 });
            }
        }
        let j = ewl_entangler(gamma)?;
        let jm = j.matrix();
        let entangled = core::array::from_fn(|r| jm.get(r, 0));
        let jd = j.adjoint();
        let disentangler = core::array::from_fn(|r| core::array::from_fn(|c| jd.matrix().get(r, c)));
        Ok(QuantizationScheme {
            base,
            gamma,
            outcome_map,
            entangled,
            disentangler,
        })
    }

    /// Scheme with the identity outcome map.
    pub fn standard(base: ClassicalGame, gamma: f64) -> Result<Self> {
        Self::new(base, gamma, IDENTITY_OUTCOMES)
    }

    pub fn base(&self) -> &ClassicalGame {
        &self.base
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn outcome_map(&self) -> &OutcomeMap {
        &self.outcome_map
    }

    fn final_amplitudes(&self, ua: &Mat2, ub: &Mat2) -> Amp4 {
        let v = &self.entangled;
        let mut w = [C64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..2 {
                    for l in 0..2 {
                        acc += ua[i][k] * ub[j][l] * v[2 * k + l];
                    }
                }
                w[2 * i + j] = acc;
            }
        }
        core::array::from_fn(|r| (0..4).map(|c| self.disentangler[r][c] * w[c]).sum())
    }

    fn probabilities(&self, ua: &Mat2, ub: &Mat2) -> [f64; 4] {
        self.final_amplitudes(ua, ub).map(|z| z.norm_sqr())
    }

    fn payoffs_from(&self, probs: &[f64; 4]) -> (f64, f64) {
        let mut out = (0.0, 0.0);
        for (k, &p) in probs.iter().enumerate() {
            let (i, j) = self.outcome_map[k];
            let (a, b) = self.base.pure_payoff(i, j).expect("validated outcome map");
            out.0 += p * a;
            out.1 += p * b;
        }
        out
    }
}

fn mat2(u: &UnitaryOperator) -> Result<Mat2> {
    if u.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            found: u.dim(),
        });
    }
    let m = u.matrix();
    Ok([[m.get(0, 0), m.get(0, 1)], [m.get(1, 0), m.get(1, 1)]])
}

fn mat2_angles(theta: f64, phi: f64, lam: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [C64::from_polar(c, phi), C64::from_polar(s, lam)],
        [C64::new(-s, 0.0), C64::from_polar(c, lam - phi)],
    ]
}

/// The protocol's final joint state `J†(U_A ⊗ U_B)J|00⟩`.
pub fn ewl_outcome(scheme: &QuantizationScheme, ua: &UnitaryOperator, ub: &UnitaryOperator) -> Result<QuantumState> {
    let amps = scheme.final_amplitudes(&mat2(ua)?, &mat2(ub)?);
    QuantumState::from_amplitudes(amps.to_vec())
}

/// Probabilities of the four joint outcomes, in basis order.
pub fn ewl_probabilities(scheme: &QuantizationScheme, ua: &UnitaryOperator, ub: &UnitaryOperator) -> Result<[f64; 4]> {
    Ok(scheme.probabilities(&mat2(ua)?, &mat2(ub)?))
}

/// Expected payoffs over the measured outcome distribution.
pub fn ewl_payoff(scheme: &QuantizationScheme, ua: &UnitaryOperator, ub: &UnitaryOperator) -> Result<(f64, f64)> {
    Ok(scheme.payoffs_from(&ewl_probabilities(scheme, ua, ub)?))
}

/// Unitaries standing in for each player's pure strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub a: Vec<UnitaryOperator>,
    pub b: Vec<UnitaryOperator>,
}

impl Embedding {
    /// Both players use `first` for strategy 0 and `second` for strategy 1.
    pub fn symmetric(first: UnitaryOperator, second: UnitaryOperator) -> Self {
        Embedding {
            a: alloc::vec![first.clone(), second.clone()],
            b: alloc::vec![first, second],
        }
    }

    /// `{first → I, second → X}`.
    pub fn classical() -> Self {
        Self::symmetric(UnitaryOperator::identity(2), pauli_x())
    }

    fn check(&self) -> Result<()> {
        for (player, v) in [(Player::A, &self.a), (Player::B, &self.b)] {
            if v.len() < 2 {
                return Err(Error::IncompleteEmbedding { player, index: v.len() });
            }
            for u in v {
                mat2(u)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperReport {
    pub proper: bool,
    pub max_error: f64,
}

/// Whether the embedded pure profiles reproduce the classical payoff table.
pub fn check_proper(scheme: &QuantizationScheme, embedding: &Embedding, tol: f64) -> Result<ProperReport> {
    embedding.check()?;
    let mut max_error: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let (qa, qb) = ewl_payoff(scheme, &embedding.a[i], &embedding.b[j])?;
            let (ca, cb) = scheme.base.pure_payoff(i, j)?;
            max_error = max_error.max((qa - ca).abs()).max((qb - cb).abs());
        }
    }
    Ok(ProperReport {
        proper: max_error <= tol,
        max_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompleteReport {
    pub complete: bool,
    /// Largest payoff error over the sampled interior profiles.
    pub max_error: f64,
    /// Properness on the corner profiles.
    pub corners: ProperReport,
    pub samples: usize,
}

/// The rotation `U(θ, 0, 0)` with `cos²(θ/2) = p`: `p = 1` is the identity
/// and `p = 0` a bit flip (up to phases).
pub fn rotation_mixer(p: f64) -> UnitaryOperator {
    let theta = 2.0 * p.clamp(0.0, 1.0).sqrt().acos();
    su2_from_params(UnitaryParams2::new(theta, 0.0, 0.0).expect("finite angle"))
}

/// Whether mixing unitaries reproduce the classical mixed game.
///
/// Completeness needs the corner (pure) profiles to pass [`check_proper`] and
/// `n_samples` seeded `(p, q)` pairs to match the mixed payoffs within `tol`.
pub fn check_complete<M>(
    scheme: &QuantizationScheme,
    embedding: &Embedding,
    mixer: M,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CompleteReport>
where
    M: Fn(f64) -> UnitaryOperator,
{
    let corners = check_proper(scheme, embedding, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    for _ in 0..n_samples {
        let p: f64 = rng.random();
        let q: f64 = rng.random();
        let (qa, qb) = ewl_payoff(scheme, &mixer(p), &mixer(q))?;
        let (ca, cb) = scheme.base.mixed_payoff(&MixedProfile::binary(p, q))?;
        max_error = max_error.max((qa - ca).abs()).max((qb - cb).abs());
    }
    Ok(CompleteReport {
        complete: corners.proper && max_error <= tol,
        max_error,
        corners,
        samples: n_samples,
    })
}

/// Finitely supported distribution over single-qubit unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedQuantumStrategy {
    atoms: Vec<(f64, UnitaryOperator)>,
}

impl MixedQuantumStrategy {
    pub fn new(atoms: Vec<(f64, UnitaryOperator)>) -> Result<Self> {
        let weights: Vec<f64> = atoms.iter().map(|(w, _)| *w).collect();
        check_distribution(&weights)?;
        for (_, u) in &atoms {
            mat2(u)?;
        }
        Ok(MixedQuantumStrategy { atoms })
    }

    pub fn pure(u: UnitaryOperator) -> Self {
        MixedQuantumStrategy {
            atoms: alloc::vec![(1.0, u)],
        }
    }

    pub fn atoms(&self) -> &[(f64, UnitaryOperator)] {
        &self.atoms
    }

    fn compiled(&self) -> Vec<(f64, Mat2)> {
        self.atoms
            .iter()
            .map(|(w, u)| (*w, mat2(u).expect("validated")))
            .collect()
    }
}

/// Probability-weighted average of [`ewl_payoff`] over atom pairs.
pub fn mixed_quantum_payoff(
    scheme: &QuantizationScheme,
    ma: &MixedQuantumStrategy,
    mb: &MixedQuantumStrategy,
) -> Result<(f64, f64)> {
    let mut out = (0.0, 0.0);
    for (wa, ua) in ma.compiled() {
        for (wb, ub) in mb.compiled() {
            let (pa, pb) = scheme.payoffs_from(&scheme.probabilities(&ua, &ub));
            out.0 += wa * wb * pa;
            out.1 += wa * wb * pb;
        }
    }
    Ok(out)
}

/// Strategy classes for best-response scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyClass {
    /// `U(θ, φ, 0)` with `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
    TwoParameter,
    /// `U(θ, φ, λ)` with `θ ∈ [0, π]`, `φ, λ ∈ [0, 2π)`.
    FullU2,
}

/// Smallest grid resolution accepted by the scans.
pub const MIN_GRID: usize = 32;

impl StrategyClass {
    /// Angles at grid index `(i, j, k)`; bounded axes include both endpoints,
    /// periodic axes exclude `2π`.
    pub fn angles(self, grid: usize, i: usize, j: usize, k: usize) -> (f64, f64, f64) {
        let step = |range: f64| range / (grid - 1) as f64;
        match self {
            StrategyClass::TwoParameter => (i as f64 * step(PI), j as f64 * step(FRAC_PI_2), 0.0),
            StrategyClass::FullU2 => (
                i as f64 * step(PI),
                j as f64 * TAU / grid as f64,
                k as f64 * TAU / grid as f64,
            ),
        }
    }

    fn third_axis(self, grid: usize) -> usize {
        match self {
            StrategyClass::TwoParameter => 1,
            StrategyClass::FullU2 => grid,
        }
    }
}

/// `(θ, φ, λ)` indices into a scan grid.
pub type GridIndex = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub params: UnitaryParams2,
    pub unitary: UnitaryOperator,
    /// The mover's expected payoff.
    pub payoff: f64,
    /// Both players' expected payoffs at the argmax.
    pub payoffs: (f64, f64),
    pub grid_index: GridIndex,
}

/// Exhaustive grid scan of `mover`'s payoff against a fixed pure opponent.
pub fn ewl_best_response_scan(
    scheme: &QuantizationScheme,
    mover: Player,
    opponent: &UnitaryOperator,
    class: StrategyClass,
    grid: usize,
) -> Result<ScanResult> {
    let fixed = MixedQuantumStrategy::new(alloc::vec![(1.0, opponent.clone())])?;
    ewl_best_response_scan_mixed(scheme, mover, &fixed, class, grid)
}

/// Exhaustive grid scan against a mixed opponent. Ties keep the
/// lexicographically smallest grid index.
pub fn ewl_best_response_scan_mixed(
    scheme: &QuantizationScheme,
    mover: Player,
    opponent: &MixedQuantumStrategy,
    class: StrategyClass,
    grid: usize,
) -> Result<ScanResult> {
    if grid < MIN_GRID {
        return Err(Error::InvalidConfig("grid resolution must be at least 32"));
    }
    let atoms = opponent.compiled();
    let mut best: Option<(GridIndex, f64, (f64, f64))> = None;
    for i in 0..grid {
        for j in 0..grid {
            for k in 0..class.third_axis(grid) {
                let (t, f, l) = class.angles(grid, i, j, k);
                let u = mat2_angles(t, f, l);
                let mut payoffs = (0.0, 0.0);
                for (w, v) in &atoms {
                    let probs = match mover {
                        Player::A => scheme.probabilities(&u, v),
                        Player::B => scheme.probabilities(v, &u),
                    };
                    let (pa, pb) = scheme.payoffs_from(&probs);
                    payoffs.0 += w * pa;
                    payoffs.1 += w * pb;
                }
                let own = match mover {
                    Player::A => payoffs.0,
                    Player::B => payoffs.1,
                };
                if best.as_ref().is_none_or(|(_, b, _)| own > *b) {
                    best = Some(((i, j, k), own, payoffs));
                }
            }
        }
    }
    let ((i, j, k), payoff, payoffs) = best.expect("nonempty grid");
    let (t, f, l) = class.angles(grid, i, j, k);
    let params = UnitaryParams2::new(t, f, l)?;
    Ok(ScanResult {
        params,
        unitary: su2_from_params(params),
        payoff,
        payoffs,
        grid_index: (i, j, k),
    })
}

/// One cell of a two-parameter payoff landscape for player A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapePoint {
    pub theta_a: f64,
    pub phi_a: f64,
    pub payoff_a: f64,
    pub payoff_b: f64,
}

/// Payoffs over A's two-parameter grid against a fixed opponent, row-major
/// in `(θ, φ)`.
pub fn payoff_landscape(
    scheme: &QuantizationScheme,
    opponent: &UnitaryOperator,
    grid: usize,
) -> Result<Vec<LandscapePoint>> {
    if grid < 2 {
        return Err(Error::InvalidConfig("landscape grid needs at least 2 points per axis"));
    }
    let v = mat2(opponent)?;
    let mut out = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            let (t, f, _) = StrategyClass::TwoParameter.angles(grid, i, j, 0);
            let (pa, pb) = scheme.payoffs_from(&scheme.probabilities(&mat2_angles(t, f, 0.0), &v));
            out.push(LandscapePoint {
                theta_a: t,
                phi_a: f,
                payoff_a: pa,
                payoff_b: pb,
            });
        }
    }
    Ok(out)
}

/// Sum of outcome probabilities minus one; zero up to rounding.
pub fn probability_defect(probs: &[f64; 4]) -> f64 {
    (probs.iter().sum::<f64>() - 1.0).abs()
}

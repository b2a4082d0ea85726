//! Iterated best response over finitely supported mixed quantum strategies.
//!
//! Each player owns a growing pool of single-qubit atoms. Every round picks,
//! among all profiles whose supports hold at most `support` atoms per player,
//! an equilibrium of the finite pool game (or the profile with the least
//! pool regret when none exists). Both players then grid-scan the full
//! single-qubit class for a best reply; replies gaining more than `tol` join
//! the pools. The process stops once neither player can improve.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    ewl_best_response_scan_mixed, ewl_payoff, mixed_quantum_payoff, MixedQuantumStrategy, QuantizationScheme,
    StrategyClass,
};
use crate::classical::ClassicalGame;
use crate::hilbert::UnitaryOperator;
use crate::{tol, Error, Player, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsConfig {
    pub grid: usize,
    /// Maximum atoms per player in the reported mixture (1 or 2).
    pub support: usize,
    pub max_rounds: usize,
    /// Gains at or below this count as no improvement.
    pub tol: f64,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            grid: 32,
            support: 2,
            max_rounds: 50,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsResult {
    pub a: MixedQuantumStrategy,
    pub b: MixedQuantumStrategy,
    pub payoffs: (f64, f64),
    /// Best-reply gains available to each player at the final profile.
    pub gains: (f64, f64),
    pub rounds: usize,
    pub converged: bool,
    /// Payoffs at the start of every round.
    pub history: Vec<(f64, f64)>,
    /// Final pool sizes.
    pub pool_sizes: (usize, usize),
}

/// Sparse mixture: `(atom index, weight)` pairs.
type Weights = Vec<(usize, f64)>;

struct Pool {
    a: Vec<UnitaryOperator>,
    b: Vec<UnitaryOperator>,
    /// `table[i][j]` holds the payoff pair for atoms `a[i]`, `b[j]`.
    table: Vec<Vec<(f64, f64)>>,
}

impl Pool {
    fn new(scheme: &QuantizationScheme, a: UnitaryOperator, b: UnitaryOperator) -> Result<Self> {
        let p = ewl_payoff(scheme, &a, &b)?;
        Ok(Pool {
            a: vec![a],
            b: vec![b],
            table: vec![vec![p]],
        })
    }

    fn contains(atoms: &[UnitaryOperator], u: &UnitaryOperator) -> bool {
        atoms.iter().any(|v| v.equals_up_to_phase(u, tol::PHASE_MATCH))
    }

    /// Returns whether the atom was new.
    fn push_a(&mut self, scheme: &QuantizationScheme, u: UnitaryOperator) -> Result<bool> {
        if Self::contains(&self.a, &u) {
            return Ok(false);
        }
        let row = self
            .b
            .iter()
            .map(|v| ewl_payoff(scheme, &u, v))
            .collect::<Result<Vec<_>>>()?;
        self.table.push(row);
        self.a.push(u);
        Ok(true)
    }

    fn push_b(&mut self, scheme: &QuantizationScheme, u: UnitaryOperator) -> Result<bool> {
        if Self::contains(&self.b, &u) {
            return Ok(false);
        }
        for (row, v) in self.table.iter_mut().zip(&self.a) {
            row.push(ewl_payoff(scheme, v, &u)?);
        }
        self.b.push(u);
        Ok(true)
    }

    fn value(&self, wa: &[(usize, f64)], wb: &[(usize, f64)]) -> (f64, f64) {
        let mut v = (0.0, 0.0);
        for &(i, x) in wa {
            for &(j, y) in wb {
                let (pa, pb) = self.table[i][j];
                v.0 += x * y * pa;
                v.1 += x * y * pb;
            }
        }
        v
    }

    /// Largest gain either player gets from switching to a pool atom.
    fn regret(&self, wa: &[(usize, f64)], wb: &[(usize, f64)]) -> f64 {
        let v = self.value(wa, wb);
        let best_a = (0..self.a.len())
            .map(|i| wb.iter().map(|&(j, y)| y * self.table[i][j].0).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        let best_b = (0..self.b.len())
            .map(|j| wa.iter().map(|&(i, x)| x * self.table[i][j].1).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        (best_a - v.0).max(best_b - v.1).max(0.0)
    }

    /// Equilibria of the subgame on the given supports.
    fn restricted(&self, sa: &[usize], sb: &[usize]) -> Result<Vec<(Weights, Weights)>> {
        let pure = |s: &[usize]| s.iter().map(|&k| (k, 1.0)).collect::<Vec<_>>();
        if sa.len() == 1 && sb.len() == 1 {
            return Ok(vec![(pure(sa), pure(sb))]);
        }
        if sa.len() == 1 || sb.len() == 1 {
            // A mixture facing a pure opponent is covered by smaller supports.
            return Ok(Vec::new());
        }
        let pa = sa
            .iter()
            .map(|&i| sb.iter().map(|&j| self.table[i][j].0).collect())
            .collect();
        let pb = sa
            .iter()
            .map(|&i| sb.iter().map(|&j| self.table[i][j].1).collect())
            .collect();
        let set = ClassicalGame::unlabeled(pa, pb)?.mixed_nash_2x2()?;
        let zip = |s: &[usize], w: &[f64]| s.iter().copied().zip(w.iter().copied()).collect::<Vec<_>>();
        Ok(set.profiles().map(|m| (zip(sa, &m.p), zip(sb, &m.q))).collect())
    }

    /// The least-regret profile with supports of at most `support` atoms.
    /// Earlier candidates win ties, and fully mixed ones are listed first.
    fn select(&self, support: usize) -> Result<(Weights, Weights)> {
        let supports = |n: usize| {
            let mut out: Vec<Vec<usize>> = Vec::new();
            if support >= 2 {
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(vec![i, j]);
                    }
                }
            }
            out.extend((0..n).map(|i| vec![i]));
            out
        };
        let mut best: Option<(f64, (Weights, Weights))> = None;
        for sa in supports(self.a.len()) {
            for sb in supports(self.b.len()) {
                for (wa, wb) in self.restricted(&sa, &sb)? {
                    let r = self.regret(&wa, &wb);
                    if best.as_ref().is_none_or(|(br, _)| r < *br - tol::NASH) {
                        best = Some((r, (wa, wb)));
                    }
                }
            }
        }
        best.map(|(_, p)| p).ok_or(Error::InvalidConfig("empty strategy pool"))
    }

    fn mixture(atoms: &[UnitaryOperator], w: &[(usize, f64)]) -> Result<MixedQuantumStrategy> {
        MixedQuantumStrategy::new(
            w.iter()
                .filter(|&&(_, x)| x > 0.0)
                .map(|&(k, x)| (x, atoms[k].clone()))
                .collect(),
        )
    }
}

/// Runs the dynamics from pure starting strategies.
pub fn mixed_best_response_dynamics(
    scheme: &QuantizationScheme,
    start_a: UnitaryOperator,
    start_b: UnitaryOperator,
    cfg: &DynamicsConfig,
) -> Result<DynamicsResult> {
    if !(1..=2).contains(&cfg.support) {
        return Err(Error::InvalidConfig("support must be 1 or 2"));
    }
    if cfg.max_rounds == 0 {
        return Err(Error::InvalidConfig("max_rounds must be positive"));
    }
    if !(cfg.tol.is_finite() && cfg.tol >= 0.0) {
        return Err(Error::InvalidConfig("tol must be finite and nonnegative"));
    }
    let mut pool = Pool::new(scheme, start_a, start_b)?;
    let mut history = Vec::new();
    let mut rounds = 0;
    loop {
        let (wa, wb) = pool.select(cfg.support)?;
        let ma = Pool::mixture(&pool.a, &wa)?;
        let mb = Pool::mixture(&pool.b, &wb)?;
        let payoffs = mixed_quantum_payoff(scheme, &ma, &mb)?;
        history.push(payoffs);
        let br_a = ewl_best_response_scan_mixed(scheme, Player::A, &mb, StrategyClass::FullU2, cfg.grid)?;
        let br_b = ewl_best_response_scan_mixed(scheme, Player::B, &ma, StrategyClass::FullU2, cfg.grid)?;
        let gains = ((br_a.payoff - payoffs.0).max(0.0), (br_b.payoff - payoffs.1).max(0.0));
        let converged = gains.0 <= cfg.tol && gains.1 <= cfg.tol;
        let mut grew = false;
        if !converged && rounds < cfg.max_rounds {
            if gains.0 > cfg.tol {
                grew |= pool.push_a(scheme, br_a.unitary)?;
            }
            if gains.1 > cfg.tol {
                grew |= pool.push_b(scheme, br_b.unitary)?;
            }
        }
        if converged || rounds >= cfg.max_rounds || !grew {
            return Ok(DynamicsResult {
                a: ma,
                b: mb,
                payoffs,
                gains,
                rounds,
                converged,
                history,
                pool_sizes: (pool.a.len(), pool.b.len()),
            });
        }
        rounds += 1;
    }
}

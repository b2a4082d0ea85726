//! Classical bimatrix games, their mixed extension, and Nash equilibria.
//!
//! Utilities are larger-is-better. Player A picks the row, player B the column.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{tol, Error, Player, Result};

/// Comparisons between expected payoffs treat differences below this as ties.
const PAYOFF_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalGame {
    rows: usize,
    cols: usize,
    payoff_a: Vec<f64>,
    payoff_b: Vec<f64>,
    labels_a: Vec<String>,
    labels_b: Vec<String>,
}

impl ClassicalGame {
    pub fn new(
        payoff_a: Vec<Vec<f64>>,
        payoff_b: Vec<Vec<f64>>,
        labels_a: Vec<String>,
        labels_b: Vec<String>,
    ) -> Result<Self> {
        let rows = payoff_a.len();
        let cols = payoff_a.first().map(Vec::len).unwrap_or(0);
        let shape_ok = rows > 0
            && cols > 0
            && payoff_b.len() == rows
            && payoff_a.iter().chain(&payoff_b).all(|r| r.len() == cols)
            && labels_a.len() == rows
            && labels_b.len() == cols;
        if !shape_ok {
            return Err(Error::ShapeMismatch { rows, cols });
        }
        let payoff_a: Vec<f64> = payoff_a.into_iter().flatten().collect();
        let payoff_b: Vec<f64> = payoff_b.into_iter().flatten().collect();
        if payoff_a.iter().chain(&payoff_b).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("payoff matrix"));
        }
        Ok(ClassicalGame {
            rows,
            cols,
            payoff_a,
            payoff_b,
            labels_a,
            labels_b,
        })
    }

    /// Game with strategies labeled `s0, s1, ...` on each side.
    pub fn unlabeled(payoff_a: Vec<Vec<f64>>, payoff_b: Vec<Vec<f64>>) -> Result<Self> {
        let rows = payoff_a.len();
        let cols = payoff_a.first().map(Vec::len).unwrap_or(0);
        let labels = |n: usize| (0..n).map(|k| format!("s{k}")).collect();
        Self::new(payoff_a, payoff_b, labels(rows), labels(cols))
    }

    /// 2×2 game with both players labeling their strategies `labels`.
    pub fn symmetric_labels(payoff_a: [[f64; 2]; 2], payoff_b: [[f64; 2]; 2], labels: [&str; 2]) -> Result<Self> {
        let owned: Vec<String> = labels.iter().map(|s| String::from(*s)).collect();
        Self::new(
            payoff_a.iter().map(|r| r.to_vec()).collect(),
            payoff_b.iter().map(|r| r.to_vec()).collect(),
            owned.clone(),
            owned,
        )
    }

    /// Prisoner's Dilemma with CC=(3,3), CD=(0,5), DC=(5,0), DD=(1,1).
    pub fn prisoners_dilemma() -> Self {
        Self::symmetric_labels([[3.0, 0.0], [5.0, 1.0]], [[3.0, 5.0], [0.0, 1.0]], ["C", "D"]).expect("static shape")
    }

    /// Zero-sum ±1 game with no pure equilibrium.
    pub fn matching_pennies() -> Self {
        Self::symmetric_labels([[1.0, -1.0], [-1.0, 1.0]], [[-1.0, 1.0], [1.0, -1.0]], ["H", "T"])
            .expect("static shape")
    }

    pub fn battle_of_the_sexes() -> Self {
        Self::symmetric_labels([[2.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 2.0]], ["O", "F"]).expect("static shape")
    }

    /// Pure coordination game with diagonal payoffs (1,1) and (2,2).
    pub fn coordination() -> Self {
        Self::symmetric_labels([[1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 2.0]], ["L", "R"]).expect("static shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn labels(&self, player: Player) -> &[String] {
        match player {
            Player::A => &self.labels_a,
            Player::B => &self.labels_b,
        }
    }

    #[inline]
    fn a(&self, i: usize, j: usize) -> f64 {
        self.payoff_a[i * self.cols + j]
    }

    #[inline]
    fn b(&self, i: usize, j: usize) -> f64 {
        self.payoff_b[i * self.cols + j]
    }

    pub fn payoff_matrix(&self, player: Player) -> Vec<Vec<f64>> {
        let m = match player {
            Player::A => &self.payoff_a,
            Player::B => &self.payoff_b,
        };
        m.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    /// `(payoff_a[i][j], payoff_b[i][j])`.
    pub fn pure_payoff(&self, i: usize, j: usize) -> Result<(f64, f64)> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.rows,
            });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.cols,
            });
        }
        Ok((self.a(i, j), self.b(i, j)))
    }

    /// Expected payoffs `pᵀ·A·q` and `pᵀ·B·q`.
    pub fn mixed_payoff(&self, m: &MixedProfile) -> Result<(f64, f64)> {
        if m.p.len() != self.rows || m.q.len() != self.cols {
            return Err(Error::ShapeMismatch {
                rows: m.p.len(),
                cols: m.q.len(),
            });
        }
        let mut ua = 0.0;
        let mut ub = 0.0;
        for (i, &pi) in m.p.iter().enumerate() {
            for (j, &qj) in m.q.iter().enumerate() {
                let w = pi * qj;
                ua += w * self.a(i, j);
                ub += w * self.b(i, j);
            }
        }
        Ok((ua, ub))
    }

    fn row_payoffs(&self, q: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| q[j] * self.a(i, j)).sum())
            .collect()
    }

    fn col_payoffs(&self, p: &[f64]) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| p[i] * self.b(i, j)).sum())
            .collect()
    }

    /// Largest gain either player could get by a unilateral pure deviation.
    pub fn max_deviation_gain(&self, m: &MixedProfile) -> Result<f64> {
        let (ua, ub) = self.mixed_payoff(m)?;
        let best_a = self.row_payoffs(&m.q).into_iter().fold(f64::NEG_INFINITY, f64::max);
        let best_b = self.col_payoffs(&m.p).into_iter().fold(f64::NEG_INFINITY, f64::max);
        Ok((best_a - ua).max(best_b - ub).max(0.0))
    }

    /// Unilateral-deviation test: no pure deviation gains more than `tol`.
    pub fn is_mixed_nash(&self, m: &MixedProfile, tol: f64) -> Result<bool> {
        Ok(self.max_deviation_gain(m)? <= tol)
    }

    /// Every pure profile where neither player gains by deviating (weak inequalities).
    pub fn pure_nash(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let row_ok = (0..self.rows).all(|k| self.a(k, j) <= self.a(i, j));
                let col_ok = (0..self.cols).all(|l| self.b(i, l) <= self.b(i, j));
                if row_ok && col_ok {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All Nash equilibria of a 2×2 game by support enumeration.
    ///
    /// Isolated equilibria come back as points; continua as families spanned
    /// by their vertices. Points lying on a family are absorbed into it.
    pub fn mixed_nash_2x2(&self) -> Result<NashSet> {
        if self.rows != 2 || self.cols != 2 {
            return Err(Error::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut points = Vec::new();
        let mut families: Vec<Vec<MixedProfile>> = Vec::new();
        let pure = |k: usize| if k == 0 { 1.0 } else { 0.0 };

        for (i, j) in self.pure_nash() {
            points.push(MixedProfile::binary(pure(i), pure(j)));
        }

        // A mixes against pure column j: needs A indifferent at j, and j a
        // best reply to the mix.
        for j in 0..2 {
            if (self.a(0, j) - self.a(1, j)).abs() > PAYOFF_EPS {
                continue;
            }
            let g0 = self.b(0, j) - self.b(0, 1 - j);
            let g1 = self.b(1, j) - self.b(1, 1 - j);
            // g(p0) = g0·p0 + g1·(1 − p0) ≥ 0
            if let Some((lo, hi)) = nonnegative_interval(g0, g1) {
                if hi - lo > PAYOFF_EPS {
                    families.push(vec![
                        MixedProfile::binary(lo, pure(j)),
                        MixedProfile::binary(hi, pure(j)),
                    ]);
                }
            }
        }
        for i in 0..2 {
            if (self.b(i, 0) - self.b(i, 1)).abs() > PAYOFF_EPS {
                continue;
            }
            let g0 = self.a(i, 0) - self.a(1 - i, 0);
            let g1 = self.a(i, 1) - self.a(1 - i, 1);
            if let Some((lo, hi)) = nonnegative_interval(g0, g1) {
                if hi - lo > PAYOFF_EPS {
                    families.push(vec![
                        MixedProfile::binary(pure(i), lo),
                        MixedProfile::binary(pure(i), hi),
                    ]);
                }
            }
        }

        // Both mix: each player's mix makes the other indifferent.
        let q_star = indifference(self.a(0, 0) - self.a(1, 0), self.a(0, 1) - self.a(1, 1));
        let p_star = indifference(self.b(0, 0) - self.b(0, 1), self.b(1, 0) - self.b(1, 1));
        let interior = |x: f64| x > PAYOFF_EPS && x < 1.0 - PAYOFF_EPS;
        match (p_star, q_star) {
            (Indifference::At(p), Indifference::At(q)) if interior(p) && interior(q) => {
                points.push(MixedProfile::binary(p, q));
            }
            (Indifference::At(p), Indifference::Everywhere) if interior(p) => {
                families.push(vec![MixedProfile::binary(p, 0.0), MixedProfile::binary(p, 1.0)]);
            }
            (Indifference::Everywhere, Indifference::At(q)) if interior(q) => {
                families.push(vec![MixedProfile::binary(0.0, q), MixedProfile::binary(1.0, q)]);
            }
            (Indifference::Everywhere, Indifference::Everywhere) => {
                families.push(vec![
                    MixedProfile::binary(1.0, 1.0),
                    MixedProfile::binary(1.0, 0.0),
                    MixedProfile::binary(0.0, 0.0),
                    MixedProfile::binary(0.0, 1.0),
                ]);
            }
            _ => {}
        }

        let mut components: Vec<NashComponent> = Vec::new();
        for p in points {
            let absorbed = families.iter().any(|f| on_family(f, &p));
            let duplicate = components
                .iter()
                .any(|c| matches!(c, NashComponent::Point(x) if x.approx_eq(&p, PAYOFF_EPS)));
            if !absorbed && !duplicate {
                components.push(NashComponent::Point(p));
            }
        }
        for (k, f) in families.iter().enumerate() {
            // Keep a family unless another (or an earlier identical one) contains it.
            let contained = families.iter().enumerate().any(|(m, g)| {
                m != k && f.iter().all(|v| on_family(g, v)) && (m < k || !g.iter().all(|v| on_family(f, v)))
            });
            if !contained {
                components.push(NashComponent::Family(f.clone()));
            }
        }
        Ok(NashSet { components })
    }
}

/// `[lo, hi] ⊆ [0, 1]` on which `g0·x + g1·(1 − x) ≥ −ε`.
fn nonnegative_interval(g0: f64, g1: f64) -> Option<(f64, f64)> {
    let at0 = g1;
    let at1 = g0;
    match (at0 >= -PAYOFF_EPS, at1 >= -PAYOFF_EPS) {
        (true, true) => Some((0.0, 1.0)),
        (false, false) => None,
        _ => {
            let root = at0 / (at0 - at1);
            if at0 >= -PAYOFF_EPS {
                Some((0.0, root))
            } else {
                Some((root, 1.0))
            }
        }
    }
}

enum Indifference {
    At(f64),
    Everywhere,
    Never,
}

/// Solves `d0·x + d1·(1 − x) = 0` for `x`.
fn indifference(d0: f64, d1: f64) -> Indifference {
    let denom = d0 - d1;
    if denom.abs() <= PAYOFF_EPS {
        if d1.abs() <= PAYOFF_EPS {
            Indifference::Everywhere
        } else {
            Indifference::Never
        }
    } else {
        Indifference::At(-d1 / denom)
    }
}

fn on_family(vertices: &[MixedProfile], m: &MixedProfile) -> bool {
    let (p, q) = (m.p[0], m.q[0]);
    let ps = vertices.iter().map(|v| v.p[0]);
    let qs = vertices.iter().map(|v| v.q[0]);
    let (plo, phi) = ps.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
    let (qlo, qhi) = qs.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
    // Families are axis-aligned segments or the full square.
    p >= plo - PAYOFF_EPS && p <= phi + PAYOFF_EPS && q >= qlo - PAYOFF_EPS && q <= qhi + PAYOFF_EPS
}

/// Probability vectors over each player's pure strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

pub(crate) fn check_distribution(v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidDistribution("empty"));
    }
    if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidDistribution("entries must be finite and nonnegative"));
    }
    if (v.iter().sum::<f64>() - 1.0).abs() > tol::DISTRIBUTION {
        return Err(Error::InvalidDistribution("entries must sum to 1"));
    }
    Ok(())
}

impl MixedProfile {
    pub fn new(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        check_distribution(&p)?;
        check_distribution(&q)?;
        Ok(MixedProfile { p, q })
    }

    /// 2×2 profile `((p0, 1 − p0), (q0, 1 − q0))`.
    pub fn binary(p0: f64, q0: f64) -> Self {
        MixedProfile {
            p: vec![p0, 1.0 - p0],
            q: vec![q0, 1.0 - q0],
        }
    }

    /// Degenerate profile on the pure cell `(i, j)`.
    pub fn pure(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut p = vec![0.0; rows];
        let mut q = vec![0.0; cols];
        p[i] = 1.0;
        q[j] = 1.0;
        MixedProfile { p, q }
    }

    pub fn approx_eq(&self, other: &MixedProfile, tol: f64) -> bool {
        self.p.len() == other.p.len()
            && self.q.len() == other.q.len()
            && self.p.iter().zip(&other.p).all(|(a, b)| (a - b).abs() <= tol)
            && self.q.iter().zip(&other.q).all(|(a, b)| (a - b).abs() <= tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NashComponent {
    Point(MixedProfile),
    /// Convex hull of the listed vertices, all of which are equilibria.
    Family(Vec<MixedProfile>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NashSet {
    pub components: Vec<NashComponent>,
}

impl NashSet {
    /// True when some equilibria form a continuum.
    pub fn degenerate(&self) -> bool {
        self.components.iter().any(|c| matches!(c, NashComponent::Family(_)))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Isolated points followed by family vertices.
    pub fn profiles(&self) -> impl Iterator<Item = &MixedProfile> {
        self.components.iter().flat_map(|c| match c {
            NashComponent::Point(p) => core::slice::from_ref(p),
            NashComponent::Family(v) => v.as_slice(),
        })
    }
}

//! Player preferences over basis elements and the induced ranking of
//! superpositions.
//!
//! A superposition `p` is preferred to `q` when a measurement of `p` lands on
//! the player's most preferred basis element `M` with higher probability. Ties
//! at `M` are broken by the probabilities at the next-ranked elements.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::Rng;

use crate::hilbert::{random::random_state, MeasurementBasis, QuantumState};
use crate::{tol, Error, Result};

/// Total order on basis indices; position 0 is the most preferred element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreferenceOrder {
    ranking: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    PrefersP,
    PrefersQ,
    Indifferent,
}

impl Preference {
    pub fn reversed(self) -> Preference {
        match self {
            Preference::PrefersP => Preference::PrefersQ,
            Preference::PrefersQ => Preference::PrefersP,
            Preference::Indifferent => Preference::Indifferent,
        }
    }
}

impl PreferenceOrder {
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let dim = ranking.len();
        let mut seen = vec![false; dim];
        for &k in &ranking {
            if k >= dim || core::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidPermutation { dim });
            }
        }
        if dim == 0 {
            return Err(Error::InvalidPermutation { dim });
        }
        Ok(PreferenceOrder { ranking })
    }

    /// Builds an order from basis labels listed most preferred first.
    pub fn from_labels<S: AsRef<str>>(basis: &MeasurementBasis, labels: &[S]) -> Result<Self> {
        let ranking = labels
            .iter()
            .map(|l| {
                basis
                    .label_index(l.as_ref())
                    .ok_or(Error::InvalidPermutation { dim: basis.dim() })
            })
            .collect::<Result<Vec<_>>>()?;
        if ranking.len() != basis.dim() {
            return Err(Error::InvalidPermutation { dim: basis.dim() });
        }
        Self::new(ranking)
    }

    /// The order that prefers `top` most and otherwise follows index order.
    pub fn with_top(dim: usize, top: usize) -> Result<Self> {
        if top >= dim {
            return Err(Error::IndexOutOfRange { index: top, dim });
        }
        let mut ranking = vec![top];
        ranking.extend((0..dim).filter(|&k| k != top));
        Self::new(ranking)
    }

    pub fn dim(&self) -> usize {
        self.ranking.len()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Basis index of the most preferred element.
    pub fn top_index(&self) -> usize {
        self.ranking[0]
    }

    fn check(&self, basis: &MeasurementBasis) -> Result<()> {
        if self.dim() != basis.dim() {
            return Err(Error::DimMismatch {
                expected: basis.dim(),
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// The most preferred basis element.
pub fn top<'a>(order: &PreferenceOrder, basis: &'a MeasurementBasis) -> Result<&'a QuantumState> {
    order.check(basis)?;
    basis.vector(order.top_index())
}

/// Compares two superpositions under `order`.
pub fn prefers(
    order: &PreferenceOrder,
    basis: &MeasurementBasis,
    p: &QuantumState,
    q: &QuantumState,
) -> Result<Preference> {
    order.check(basis)?;
    for s in [p, q] {
        if s.dim() != basis.dim() {
            return Err(Error::DimMismatch {
                expected: basis.dim(),
                found: s.dim(),
            });
        }
    }
    for &k in &order.ranking {
        let pp = basis.probability(p, k)?;
        let pq = basis.probability(q, k)?;
        if pp > pq + tol::TIE {
            return Ok(Preference::PrefersP);
        }
        if pq > pp + tol::TIE {
            return Ok(Preference::PrefersQ);
        }
    }
    Ok(Preference::Indifferent)
}

/// Outcome probabilities listed in preference order, most preferred first.
pub fn rank_outcome_distribution(
    order: &PreferenceOrder,
    basis: &MeasurementBasis,
    s: &QuantumState,
) -> Result<Vec<(String, f64)>> {
    order.check(basis)?;
    if s.dim() != basis.dim() {
        return Err(Error::DimMismatch {
            expected: basis.dim(),
            found: s.dim(),
        });
    }
    order
        .ranking
        .iter()
        .map(|&k| Ok((basis.labels()[k].clone(), basis.probability(s, k)?)))
        .collect()
}

/// Counts from comparing the probability ranking with a Euclidean-distance
/// ranking `‖p − M‖ < ‖q − M‖` on sampled pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RankingDisagreement {
    pub pairs: usize,
    /// Pairs where the two criteria pick different winners.
    pub disagreements: usize,
}

/// Samples Haar-random pairs and records how often ranking by distance to the
/// top element disagrees with ranking by Born probability at it.
pub fn distance_ranking_disagreement<R: Rng + ?Sized>(
    order: &PreferenceOrder,
    basis: &MeasurementBasis,
    pairs: usize,
    rng: &mut R,
) -> Result<RankingDisagreement> {
    let m = top(order, basis)?;
    let distance = |s: &QuantumState| -> f64 {
        s.amplitudes()
            .iter()
            .zip(m.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let mut out = RankingDisagreement::default();
    for _ in 0..pairs {
        let p = random_state(rng, basis.dim());
        let q = random_state(rng, basis.dim());
        let by_prob = basis.probability(&p, order.top_index())? > basis.probability(&q, order.top_index())?;
        let by_distance = distance(&p) < distance(&q);
        out.pairs += 1;
        if by_prob != by_distance {
            out.disagreements += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn comp4() -> MeasurementBasis {
        MeasurementBasis::computational(4)
    }

    #[test]
    fn top_follows_first_rank() {
        let b = comp4();
        let o = PreferenceOrder::new(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(top(&o, &b).unwrap(), &QuantumState::basis(4, 3).unwrap());
        let o = PreferenceOrder::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(top(&o, &b).unwrap().labels()[0], "00");
        let b2 = MeasurementBasis::computational(2);
        let o = PreferenceOrder::new(vec![0, 1]).unwrap();
        assert_eq!(top(&o, &b2).unwrap().amplitudes()[0], c(1.0, 0.0));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PreferenceOrder::new(vec![0, 0, 1, 2]).is_err());
        assert!(PreferenceOrder::new(vec![0, 4, 1, 2]).is_err());
        assert!(PreferenceOrder::new(vec![]).is_err());
        let b = comp4();
        assert!(PreferenceOrder::from_labels(&b, &["11", "10", "01"]).is_err());
        assert!(PreferenceOrder::from_labels(&b, &["11", "10", "01", "xx"]).is_err());
    }

    #[test]
    fn prefers_examples() {
        let b = comp4();
        let o = PreferenceOrder::new(vec![3, 2, 1, 0]).unwrap();
        let m = QuantumState::basis(4, 3).unwrap();
        let orth = QuantumState::basis(4, 0).unwrap();
        assert_eq!(prefers(&o, &b, &m, &orth).unwrap(), Preference::PrefersP);
        assert_eq!(prefers(&o, &b, &m, &m).unwrap(), Preference::Indifferent);

        let bell = QuantumState::from_amplitudes(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let q = QuantumState::from_amplitudes(vec![c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.8, 0.0)]).unwrap();
        assert_eq!(prefers(&o, &b, &bell, &q).unwrap(), Preference::PrefersQ);
    }

    #[test]
    fn ties_at_top_fall_through_the_ranking() {
        let b = comp4();
        let o = PreferenceOrder::new(vec![3, 2, 1, 0]).unwrap();
        // Both have probability 0 at |11⟩; p has more weight at |10⟩.
        let p = QuantumState::basis(4, 2).unwrap();
        let q = QuantumState::basis(4, 1).unwrap();
        assert_eq!(prefers(&o, &b, &p, &q).unwrap(), Preference::PrefersP);
    }

    #[test]
    fn rank_distribution_examples() {
        let b = comp4();
        let o = PreferenceOrder::new(vec![3, 2, 1, 0]).unwrap();
        let r = rank_outcome_distribution(&o, &b, &QuantumState::basis(4, 3).unwrap()).unwrap();
        assert_eq!(r[0].0, "11");
        assert!((r[0].1 - 1.0).abs() < 1e-15);

        let uniform = QuantumState::from_amplitudes(vec![c(1.0, 0.0); 4]).unwrap();
        let r = rank_outcome_distribution(&o, &b, &uniform).unwrap();
        assert!(r.iter().all(|(_, p)| (p - 0.25).abs() < 1e-15));

        let bell = QuantumState::from_amplitudes(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = rank_outcome_distribution(&o, &b, &bell).unwrap();
        let get = |l: &str| r.iter().find(|(x, _)| x == l).unwrap().1;
        assert!((get("00") - 0.5).abs() < 1e-15 && (get("11") - 0.5).abs() < 1e-15);
        assert_eq!(get("01"), 0.0);
        assert_eq!(get("10"), 0.0);
    }

    #[test]
    fn distance_and_probability_disagree_under_relative_phase() {
        let b = comp4();
        let o = PreferenceOrder::new(vec![3, 2, 1, 0]).unwrap();
        let m = QuantumState::basis(4, 3).unwrap();
        let im = m.with_phase(core::f64::consts::FRAC_PI_2);
        // i·M is a distance √2 from M yet measures to M with certainty.
        assert_eq!(prefers(&o, &b, &im, &m).unwrap(), Preference::Indifferent);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        let d = distance_ranking_disagreement(&o, &b, 2000, &mut rng).unwrap();
        assert_eq!(d.pairs, 2000);
        assert!(d.disagreements > 0);
    }

    #[test]
    fn dimension_mismatch() {
        let b = comp4();
        let o = PreferenceOrder::new(vec![1, 0]).unwrap();
        assert!(matches!(top(&o, &b), Err(Error::DimMismatch { .. })));
        let o = PreferenceOrder::new(vec![3, 2, 1, 0]).unwrap();
        let s2 = QuantumState::basis(2, 0).unwrap();
        assert!(prefers(&o, &b, &s2, &s2).is_err());
    }
}

//! Haar-distributed samples.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::Matrix;
use super::operator::UnitaryOperator;
use super::state::{computational_labels, norm_of, QuantumState};
use super::C64;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state of dimension `dim`.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> QuantumState {
    loop {
        let amplitudes: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        if norm_of(&amplitudes) > 1e-6 {
            return QuantumState::with_labels(amplitudes, computational_labels(dim)).expect("nonzero finite vector");
        }
    }
}

/// Haar-random unitary of dimension `dim` (Gram-Schmidt on a Ginibre matrix).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> UnitaryOperator {
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for u in &columns {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = norm_of(&v);
        if norm < 1e-6 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        columns.push(v);
    }
    let mut m = Matrix::zeros(dim);
    for (j, col) in columns.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m.set(i, j, z);
        }
    }
    UnitaryOperator::trusted(m)
}

/// Uniform angle in `[0, 2π)`.
pub(crate) fn angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>() * core::f64::consts::TAU
}

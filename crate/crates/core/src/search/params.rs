//! Coordinates on the strategy sets.
//!
//! Single-qubit unitaries use three angles with the convention
//!
//! ```text
//! U(θ, φ, λ) = [  e^{iφ} cos(θ/2)    e^{iλ} sin(θ/2)       ]
//!              [ −sin(θ/2)           e^{i(λ−φ)} cos(θ/2)   ]
//! ```
//!
//! which is `U(θ, φ)` of the two-parameter quantized-game class with the
//! second column rotated by the phase `e^{iλ}`. Every element of U(2) equals
//! some `U(θ, φ, λ)` up to global phase. Joint-space unitaries are
//! `exp(iH)` for a Hermitian `H` read off 16 real coordinates.

use core::f64::consts::{PI, TAU};

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::hilbert::{Matrix, UnitaryOperator, C64};
use crate::{Error, Result};

/// Three-angle coordinates for a single-qubit unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryParams2 {
    theta: f64,
    phi: f64,
    lam: f64,
}

impl UnitaryParams2 {
    /// Wraps arbitrary finite angles into `θ ∈ [0, π]`, `φ, λ ∈ [0, 2π)`.
    /// The unitary they describe is unchanged up to a global sign.
    pub fn new(theta: f64, phi: f64, lam: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite() && lam.is_finite()) {
            return Err(Error::NonFinite("unitary angles"));
        }
        let mut theta = rem_tau(theta);
        let mut phi = phi;
        if theta > PI {
            // U(2π − θ, φ + π, λ) = U(θ, φ, λ)
            theta = TAU - theta;
            phi += PI;
        }
        Ok(UnitaryParams2 {
            theta,
            phi: wrap_angle(phi),
            lam: wrap_angle(lam),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }
}

fn rem_tau(x: f64) -> f64 {
    let r = x % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

fn wrap_angle(x: f64) -> f64 {
    let w = rem_tau(x);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// The single-qubit unitary at the given angles.
pub fn su2_from_params(p: UnitaryParams2) -> UnitaryOperator {
    UnitaryOperator::trusted(su2_matrix(p.theta, p.phi, p.lam))
}

pub(crate) fn su2_matrix(theta: f64, phi: f64, lam: f64) -> Matrix {
    let (s, c) = (theta / 2.0).sin_cos();
    Matrix::from_rows([
        [C64::from_polar(c, phi), C64::from_polar(s, lam)],
        [C64::new(-s, 0.0), C64::from_polar(c, lam - phi)],
    ])
}

/// Angles reproducing `u` up to global phase.
pub fn su2_params_of(u: &UnitaryOperator) -> Result<UnitaryParams2> {
    if u.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            found: u.dim(),
        });
    }
    let m = u.matrix();
    // Strip the global phase: v = e^{-iδ}u with det v = 1, v = [[a, b], [−b̄, ā]].
    let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    let unphase = C64::cis(-det.arg() / 2.0);
    let a = m.get(0, 0) * unphase;
    let b = m.get(0, 1) * unphase;
    let theta = 2.0 * b.norm().atan2(a.norm());
    // e^{-iλ/2}·U(θ, φ, λ) has a = e^{i(φ−λ/2)}cos, b = e^{iλ/2}sin, which
    // determines (φ, λ) modulo the ±1 ambiguity of the unphasing.
    let (phi, lam) = if b.norm() < 1e-15 {
        (a.arg(), 0.0)
    } else if a.norm() < 1e-15 {
        (0.0, 2.0 * b.arg())
    } else {
        (a.arg() + b.arg(), 2.0 * b.arg())
    };
    UnitaryParams2::new(theta, phi, lam)
}

/// Sixteen coordinates of a Hermitian 4×4 generator: four real diagonal
/// entries, then the real parts and then the imaginary parts of the upper
/// off-diagonal entries in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryParams4 {
    params: [f64; 16],
}

const UPPER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl UnitaryParams4 {
    pub fn new(params: [f64; 16]) -> Result<Self> {
        if params.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("generator coordinates"));
        }
        Ok(UnitaryParams4 { params })
    }

    pub fn from_slice(params: &[f64]) -> Result<Self> {
        let arr: [f64; 16] = params.try_into().map_err(|_| Error::DimMismatch {
            expected: 16,
            found: params.len(),
        })?;
        Self::new(arr)
    }

    pub fn params(&self) -> &[f64; 16] {
        &self.params
    }

    /// The Hermitian generator `H`.
    pub fn generator(&self) -> Matrix {
        let mut h = Matrix::zeros(4);
        for i in 0..4 {
            h.set(i, i, C64::new(self.params[i], 0.0));
        }
        for (k, &(i, j)) in UPPER.iter().enumerate() {
            let z = C64::new(self.params[4 + k], self.params[10 + k]);
            h.set(i, j, z);
            h.set(j, i, z.conj());
        }
        h
    }
}

/// `exp(iH)` for the generator encoded by `p`.
pub fn u4_from_params(p: &UnitaryParams4) -> Result<UnitaryOperator> {
    UnitaryOperator::new(p.generator().scale(C64::new(0.0, 1.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::gates::pauli_x;

    #[test]
    fn su2_identity_and_flip() {
        let id = su2_from_params(UnitaryParams2::new(0.0, 0.0, 0.0).unwrap());
        assert!(id.matrix().max_abs_diff(&Matrix::identity(2)) < 1e-15);
        // θ = π permutes the computational basis (up to per-entry phases)...
        let flip = su2_from_params(UnitaryParams2::new(PI, 0.0, 0.0).unwrap());
        assert!((flip.matrix().get(1, 0).norm() - 1.0).abs() < 1e-15);
        assert!((flip.matrix().get(0, 1).norm() - 1.0).abs() < 1e-15);
        // ...and λ = π makes it exactly −X.
        let minus_x = su2_from_params(UnitaryParams2::new(PI, 0.0, PI).unwrap());
        assert!(minus_x.equals_up_to_phase(&pauli_x(), 1e-15));
    }

    #[test]
    fn wrapping_preserves_the_unitary() {
        for &(t, f, l) in &[(4.0, 1.0, -2.0), (-1.0, 7.0, 13.0), (TAU + 0.3, -0.2, 0.0)] {
            let wrapped = UnitaryParams2::new(t, f, l).unwrap();
            assert!((0.0..=PI).contains(&wrapped.theta()));
            assert!((0.0..TAU).contains(&wrapped.phi()));
            assert!((0.0..TAU).contains(&wrapped.lam()));
            let raw = su2_matrix(t, f, l);
            let raw = UnitaryOperator::new(raw).unwrap();
            assert!(su2_from_params(wrapped).equals_up_to_phase(&raw, 1e-12));
        }
        assert!(UnitaryParams2::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn u4_examples() {
        let id = u4_from_params(&UnitaryParams4::new([0.0; 16]).unwrap()).unwrap();
        assert!(id.matrix().max_abs_diff(&Matrix::identity(4)) < 1e-15);
        let mut p = [0.0; 16];
        p[3] = PI;
        let u = u4_from_params(&UnitaryParams4::new(p).unwrap()).unwrap();
        let want = Matrix::diagonal(&[
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
        ]);
        assert!(u.matrix().max_abs_diff(&want) < 1e-14);
        p[5] = f64::INFINITY;
        assert!(matches!(UnitaryParams4::new(p), Err(Error::NonFinite(_))));
        assert!(UnitaryParams4::from_slice(&[0.0; 3]).is_err());
    }

    #[test]
    fn generator_is_hermitian() {
        let p: [f64; 16] = core::array::from_fn(|k| (k as f64 * 0.37).sin());
        let h = UnitaryParams4::new(p).unwrap().generator();
        assert!(h.max_abs_diff(&h.adjoint()) == 0.0);
    }
}

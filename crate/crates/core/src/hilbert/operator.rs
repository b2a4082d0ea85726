use super::matrix::Matrix;
use super::state::QuantumState;
use crate::{tol, Error, Result};

/// Square complex matrix certified unitary to within [`tol::UNITARY`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator {
    matrix: Matrix,
}

impl UnitaryOperator {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let residual = matrix.unitarity_residual();
        if !(residual <= tol::UNITARY) {
            return Err(Error::NotUnitary { residual });
        }
        Ok(UnitaryOperator { matrix })
    }

    /// For matrices unitary by construction.
    pub(crate) fn trusted(matrix: Matrix) -> Self {
        debug_assert!(matrix.unitarity_residual() <= 1e-9);
        UnitaryOperator { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryOperator {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `self · other`: `other` acts first.
    pub fn compose(&self, other: &UnitaryOperator) -> Result<UnitaryOperator> {
        Ok(UnitaryOperator::trusted(self.matrix.mul(&other.matrix)?))
    }

    /// `self ⊗ other`, with `self` on the first (high-order) factor.
    pub fn kron(&self, other: &UnitaryOperator) -> UnitaryOperator {
        UnitaryOperator::trusted(self.matrix.kron(&other.matrix))
    }

    pub fn adjoint(&self) -> UnitaryOperator {
        UnitaryOperator {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        let amplitudes = self.matrix.mul_vec(state.amplitudes())?;
        Ok(QuantumState::from_normalized(amplitudes, state.shared_labels()))
    }

    /// True when `self = e^{iα}·other` for some α, to within `tol` elementwise.
    pub fn equals_up_to_phase(&self, other: &UnitaryOperator, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        // tr(self† other) = dim · e^{iα} exactly when the two agree up to phase.
        let trace: super::C64 = (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |k| (i, k)))
            .map(|(i, k)| self.matrix.get(k, i).conj() * other.matrix.get(k, i))
            .sum();
        if trace.norm() < 1e-6 {
            return false;
        }
        let phase = trace / trace.norm();
        self.matrix.scale(phase).max_abs_diff(&other.matrix) <= tol
    }
}

/// Matrix-vector action of `u` on `s`.
pub fn apply(u: &UnitaryOperator, s: &QuantumState) -> Result<QuantumState> {
    u.apply(s)
}

/// `u1 · u2`; `u2` acts first.
pub fn compose(u1: &UnitaryOperator, u2: &UnitaryOperator) -> Result<UnitaryOperator> {
    u1.compose(u2)
}

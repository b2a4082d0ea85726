use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::C64;
use crate::{tol, Error, Result};

/// Normalized complex amplitude vector over a labeled basis.
///
/// Labels are carried for reporting only and never enter the arithmetic.
/// Global phase is stored as given; use [`QuantumState::same_ray`] to compare
/// states up to phase.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<C64>,
    labels: Arc<[String]>,
}

/// Labels of the computational basis: binary strings for power-of-two
/// dimensions (`"00"`, `"01"`, ...), decimal indices otherwise.
pub fn computational_labels(dim: usize) -> Arc<[String]> {
    if dim.is_power_of_two() && dim > 1 {
        let width = dim.trailing_zeros() as usize;
        (0..dim).map(|k| format!("{k:0width$b}")).collect()
    } else {
        (0..dim).map(|k| format!("{k}")).collect()
    }
}

pub(crate) fn norm_of(amplitudes: &[C64]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl QuantumState {
    /// Normalizes `amplitudes` and attaches `labels`.
    pub fn new(amplitudes: Vec<C64>, labels: Vec<String>) -> Result<Self> {
        if amplitudes.len() != labels.len() {
            return Err(Error::LengthMismatch {
                amplitudes: amplitudes.len(),
                labels: labels.len(),
            });
        }
        Self::with_labels(amplitudes, labels.into())
    }

    /// Normalizes `amplitudes`, labeling them with the computational basis.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let labels = computational_labels(amplitudes.len());
        Self::with_labels(amplitudes, labels)
    }

    pub(crate) fn with_labels(mut amplitudes: Vec<C64>, labels: Arc<[String]>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroVector { norm: 0.0 });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = norm_of(&amplitudes);
        if norm < tol::ZERO_NORM {
            return Err(Error::ZeroVector { norm });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(QuantumState { amplitudes, labels })
    }

    /// Trusted constructor for amplitudes that are already unit norm.
    pub(crate) fn from_normalized(amplitudes: Vec<C64>, labels: Arc<[String]>) -> Self {
        debug_assert!((norm_of(&amplitudes) - 1.0).abs() < 1e-9);
        QuantumState { amplitudes, labels }
    }

    /// Computational basis vector `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, dim });
        }
        let mut amplitudes = alloc::vec![C64::new(0.0, 0.0); dim];
        amplitudes[k] = C64::new(1.0, 0.0);
        Ok(QuantumState {
            amplitudes,
            labels: computational_labels(dim),
        })
    }

    /// Single-qubit state at Bloch angles: `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        QuantumState {
            amplitudes: alloc::vec![C64::new(c, 0.0), C64::from_polar(s, phi)],
            labels: computational_labels(2),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn shared_labels(&self) -> Arc<[String]> {
        self.labels.clone()
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }

    /// `e^{iφ}` times this state.
    pub fn with_phase(&self, phi: f64) -> Self {
        let phase = C64::cis(phi);
        QuantumState {
            amplitudes: self.amplitudes.iter().map(|z| z * phase).collect(),
            labels: self.labels.clone(),
        }
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(inner_raw(&self.amplitudes, &other.amplitudes))
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &QuantumState) -> Result<f64> {
        self.inner(other).map(|z| z.norm_sqr())
    }

    /// True when the two states agree up to a global phase: `|⟨a|b⟩| ≥ 1 − tol`.
    pub fn same_ray(&self, other: &QuantumState, tol: f64) -> bool {
        self.inner(other).map(|z| z.norm() >= 1.0 - tol).unwrap_or(false)
    }

    /// Index of the label `label`, if present.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn inner_raw(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Raw Kronecker product of two amplitude vectors (index `i * b.len() + j`).
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `|a⟩ ⊗ |b⟩` for two single-qubit states; amplitude `2i + j` is `a[i]·b[j]`.
pub fn tensor(a: &QuantumState, b: &QuantumState) -> Result<QuantumState> {
    for s in [a, b] {
        if s.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                found: s.dim(),
            });
        }
    }
    let labels: Arc<[String]> = a
        .labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("{x}{y}")))
        .collect();
    QuantumState::with_labels(kron_vec(&a.amplitudes, &b.amplitudes), labels)
}

/// `⟨a|b⟩`.
pub fn inner(a: &QuantumState, b: &QuantumState) -> Result<C64> {
    a.inner(b)
}

/// Ordered orthonormal basis with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<QuantumState>,
    labels: Arc<[String]>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<QuantumState>, labels: Vec<String>) -> Result<Self> {
        let dim = vectors.first().map(QuantumState::dim).unwrap_or(0);
        if dim == 0 || vectors.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                found: vectors.len(),
            });
        }
        if labels.len() != dim {
            return Err(Error::LengthMismatch {
                amplitudes: dim,
                labels: labels.len(),
            });
        }
        let mut deviation: f64 = 0.0;
        for (i, u) in vectors.iter().enumerate() {
            if u.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            for v in &vectors[i..] {
                let z = inner_raw(&u.amplitudes, &v.amplitudes).norm();
                let target = if core::ptr::eq(u, v) { 1.0 } else { 0.0 };
                deviation = deviation.max((z - target).abs());
            }
        }
        if deviation > tol::ORTHOGONAL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(MeasurementBasis {
            vectors,
            labels: labels.into(),
        })
    }

    /// The computational basis `|0…0⟩, …, |1…1⟩`.
    pub fn computational(dim: usize) -> Self {
        let labels = computational_labels(dim);
        let vectors = (0..dim)
            .map(|k| {
                let mut s = QuantumState::basis(dim, k).expect("k < dim");
                s.labels = labels.clone();
                s
            })
            .collect();
        MeasurementBasis { vectors, labels }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QuantumState] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Result<&QuantumState> {
        self.vectors.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            dim: self.dim(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Born probability of outcome `k` when measuring `state` in this basis.
    pub fn probability(&self, state: &QuantumState, k: usize) -> Result<f64> {
        let v = self.vector(k)?;
        v.overlap(state)
    }

    /// Born probabilities of every outcome, in basis order.
    pub fn distribution(&self, state: &QuantumState) -> Result<Vec<f64>> {
        (0..self.dim()).map(|k| self.probability(state, k)).collect()
    }
}

/// `|⟨basis_k|s⟩|²`.
pub fn born_prob(s: &QuantumState, basis: &MeasurementBasis, k: usize) -> Result<f64> {
    if s.dim() != basis.dim() {
        return Err(Error::DimMismatch {
            expected: basis.dim(),
            found: s.dim(),
        });
    }
    basis.probability(s, k)
}

use crate::qgame::StrategyMode;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cannot normalize a zero vector (norm {norm:e})")]
    ZeroVector { norm: f64 },
    #[error("{amplitudes} amplitudes but {labels} labels")]
    LengthMismatch { amplitudes: usize, labels: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("basis is not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("ranking is not a permutation of 0..{dim}")]
    InvalidPermutation { dim: usize },
    #[error("strategy unitary of dimension {found} does not fit {mode:?} mode")]
    ModeMismatch { mode: StrategyMode, found: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("embedding has no unitary for pure strategy {index} of player {player}")]
    IncompleteEmbedding { player: crate::Player, index: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(&'static str),
    #[error("payoff matrices do not match the declared {rows}x{cols} shape")]
    ShapeMismatch { rows: usize, cols: usize },
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("rank {rank} exceeds the limit {limit} for this operation")]
    RankTooLarge { rank: usize, limit: usize },

    #[error("expected a square matrix of even dimension, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },

    #[error("vector length {0} is not even")]
    OddLength(usize),

    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,

    #[error("cannot reduce modulus {from} to {to}")]
    NonDividingModulus { from: u64, to: u64 },

    #[error("operation requires modulus 0 or an even modulus, got {0}")]
    OddModulus(u64),

    #[error("splitting question requires modulus 0 or a multiple of 4, got {0}")]
    SplitModulus(u64),

    #[error("covector coordinate {index} is not twice a residue")]
    OddCoordinate { index: usize },

    #[error("twist parameter must be even")]
    OddTwist,

    #[error("basis index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("sphere dimension must be 3 or 7, got {0}")]
    InvalidSphereDim(u32),

    #[error("coefficient index must be at least 1")]
    InvalidCoefficientIndex,

    #[error("tabulated cocycle has no value at the requested matrix")]
    NotTabulated,

    #[error("element is not a member of the subgroup for the given refinement")]
    NotMember,

    #[error("model flavour mismatch: {0}")]
    ModelMismatch(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

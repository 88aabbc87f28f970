use thiserror::Error;

/// Errors raised by the exact-arithmetic engines and the pipelines built on them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("polynomial is not squarefree (gcd with derivative has degree {0})")]
    NotSquarefree(usize),

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("odd degree {0}: a real root is forced")]
    OddDegree(usize),

    #[error("condition (P) fails: {0}")]
    PropertyP(String),

    #[error("prime {p} divides the discriminant")]
    PrimeDividesDiscriminant { p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("non-transverse configuration: {0}")]
    NonTransverse(String),

    #[error("group model missing for orbit analysis")]
    GroupModelMissing,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("torus decomposition check failed: {0}")]
    Decomposition(String),

    #[error("rank {0} too large for the exterior model (max 16)")]
    RankTooLarge(usize),

    #[error("invalid blow-up data: {0}")]
    BlowupSpec(String),

    #[error("degenerate Poincare pairing in degree {0}")]
    DegeneratePairing(usize),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("unsupported block: {0}")]
    UnsupportedBlock(String),

    #[error("missing kernel metadata for basis class {0}")]
    MissingKernel(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("field size {p}^{k} is out of range: need q >= 3 and q^2 <= 65536")]
    FieldSizeOutOfRange { p: u32, k: u32 },

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("group element lambda must be nonzero")]
    ZeroScalar,

    #[error("invalid orbit base point: {0}")]
    InvalidBasePoint(String),

    #[error("tau must be nonzero")]
    ZeroTau,

    #[error("multiplicity m = {m} out of range 2..={max}")]
    MultiplicityOutOfRange { m: usize, max: usize },

    #[error("cannot evaluate at a point with x = 0 (pole locus)")]
    PoleEvaluation,

    #[error("cannot evaluate at a point at infinity")]
    PointAtInfinity,

    #[error("message length {got} does not match code dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("generator matrix has rank {rank}, expected {expected} (q = {q}, m = {m})")]
    RankDeficient { q: u32, m: usize, rank: usize, expected: usize },

    #[error("enumeration of {size} messages exceeds the size guard of {limit}")]
    SizeGuard { size: u128, limit: u128 },

    #[error("degenerate leading coefficient for {0} lacunary polynomial")]
    DegenerateLeading(&'static str),

    #[error("witness requires m >= 3, got m = {0}")]
    WitnessNeedsM3(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

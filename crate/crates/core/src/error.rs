use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    DescriptorMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("undecidable at search bound {0}")]
    UndecidableAtBound(u64),
    #[error("extension is inseparable")]
    InseparableExtension,
    #[error("polynomial of degree {0} exceeds the factorization limit")]
    FactorizationOverflow(usize),
    #[error("rank {rank} and Witt class of rank parity {witt_parity} disagree mod 2")]
    ParityMismatch { rank: i64, witt_parity: u8 },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(i64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("class of even rank is not a unit")]
    NotAUnit,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("eta cannot lower degree -1")]
    DegreeUnderflow,
    #[error("product degree {0} exceeds 2")]
    DegreeOverflow(i64),
    #[error("place polynomial is not a canonical uniformizer")]
    NonCanonicalUniformizer,
    #[error("residue field exceeds tower bounds: {0}")]
    TowerBoundExceeded(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

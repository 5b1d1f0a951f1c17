use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus (primes 2..=97)")]
    InvalidPrime(u32),
    #[error("residue {value} out of range for p = {p}")]
    ResidueOutOfRange { value: u32, p: u32 },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("algebra dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("not a group algebra")]
    NotGroupAlgebra,
    #[error("operands belong to different algebras")]
    ParentMismatch,
    #[error("not a derivation: Leibniz rule fails on basis pair ({i}, {j})")]
    NotADerivation { i: usize, j: usize },
    #[error("not a higher derivation: {0}")]
    NotAHigherDerivation(String),
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported setup: {0}")]
    UnsupportedSetup(String),
    #[error("leading index {found} is below the required {required}")]
    LeadingIndexTooLow { found: usize, required: usize },
    #[error("element is not invertible")]
    NotInvertible,
}

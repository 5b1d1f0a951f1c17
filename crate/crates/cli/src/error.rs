use thiserror::Error;

/// Exit status for malformed input, bad parameters and size caps.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for failed mathematical preconditions.
pub const EXIT_MATH: i32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Math(_) => EXIT_MATH,
        }
    }
}

impl From<hochschild_core::Error> for CliError {
    fn from(e: hochschild_core::Error) -> Self {
        use hochschild_core::Error as E;
        match e {
            E::InvalidPrime(_)
            | E::ResidueOutOfRange { .. }
            | E::ModulusMismatch(..)
            | E::DimensionMismatch { .. }
            | E::NotSquare { .. }
            | E::DimensionCap { .. }
            | E::InvalidAlgebra(_)
            | E::NotAGroup(_)
            | E::ParentMismatch
            | E::InvalidParameter(_) => CliError::Input(e.to_string()),
            E::NotGroupAlgebra
            | E::NotADerivation { .. }
            | E::NotAHigherDerivation(_)
            | E::OrderMismatch(..)
            | E::UnsupportedSetup(_)
            | E::LeadingIndexTooLow { .. }
            | E::NotInvertible => CliError::Math(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

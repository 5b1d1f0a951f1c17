//! First Hochschild cohomology of finite-dimensional algebras over prime
//! fields: derivations modulo inner derivations, the Lie bracket and p-power
//! map, truncated higher derivations and integrability, and the transfer map
//! for the `S_3 / C_3` group-algebra pair.

pub mod algebra;
pub mod builtin;
pub mod error;
pub mod exactla;
pub mod hochschild;
pub mod integrability;
pub mod transfer;

pub use algebra::{Algebra, AlgebraElement, GroupData, Violation, MAX_DIM};
pub use error::{Error, Result};
pub use exactla::{FpMatrix, FpScalar, Prime};
pub use hochschild::{FirstCohomology, HH1Class, LinearEndo};
pub use integrability::{IntegrationOutcome, TruncatedElement, TruncatedHigherDerivation};
pub use transfer::GroupBimoduleSetup;

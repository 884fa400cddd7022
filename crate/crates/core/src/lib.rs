//! Exact computations for 3-Lie algebras equipped with a derivation.
//!
//! Everything is over ℚ with arbitrary precision; there is no floating point.
//! Basis indices are 0-based in the API and 1-based in the JSON format.

pub mod algebra;
pub mod basis;
pub mod cohomology;
pub mod complex;
pub mod deformations;
pub mod error;
pub mod extensions;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use algebra::{
    derivation_report, derivation_space, is_derivation, semidirect, validate_3lie,
    validate_der_module, validate_representation, DerModule, LieDerPair, Representation,
    ThreeLieAlgebra,
};
pub use cohomology::{betti, is_coboundary, is_cocycle, matrix_of_pair_d, CohomologyReport};
pub use complex::{Cochain, PairCochain};
pub use error::{Error, Result};
pub use linalg::{kernel_basis, rank, solve, LinearMap, QMatrix};
pub use report::{ValidationReport, Violation, DEFAULT_MAX_VIOLATIONS};
pub use scalar::Scalar;

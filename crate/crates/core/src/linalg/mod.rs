//! Exact linear algebra over the rationals.

mod dense;
mod elim;
pub(crate) mod sparse;

pub use dense::LinearMap;
pub use elim::{kernel_basis, rank, solve, Span};
pub use sparse::{QMatrix, SparseVec};

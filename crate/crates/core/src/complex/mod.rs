//! Cochains of a 3-Lie algebra, the differentials `d`, `δ`, `∂`, and the graded bracket.

mod bracket;
mod cochain;
mod differential;

pub use bracket::{bracket, circ};
pub use cochain::{Cochain, PairCochain, Shape, MAX_COCHAIN_DEGREE, MAX_DEGREE};
pub use differential::{d, d_matrix, delta, delta_matrix, pair_d, pair_d_matrix};

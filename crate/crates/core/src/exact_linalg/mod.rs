//! Exact arithmetic over `F_p` and `Q`, and the dense matrix kernels the rest
//! of the crate is built on: rank, determinant, solve, block sums.

mod field;
mod matrix;

pub use field::{format_rational, parse_rational, Elem, Field};
pub use matrix::{Echelon, Matrix};

//! Truncated Laurent series over `Q` and matrices of them.
//!
//! Every value carries the precision to which it is known, and every
//! operation propagates it, so an answer that depends on unknown
//! coefficients shows up as indeterminate instead of wrong.

mod matrix;
mod series;

use thiserror::Error;

pub use matrix::LaurentMatrix;
pub use series::{Series, DEFAULT_PRECISION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot invert a series that vanishes modulo x^{0}")]
    ZeroInverse(i64),
    #[error("determinant vanishes to the working precision")]
    Indeterminate,
    #[error("matrix is singular to the working precision")]
    Singular,
    #[error("shape mismatch: {0}x{1} against {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

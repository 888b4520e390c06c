//! Exact arithmetic: Gaussian rationals, univariate polynomials and rational
//! functions in z, differentiation, and the text grammar for parameter input.

mod gaussian;
mod parse;
mod poly;
mod ratfunc;

pub use gaussian::GaussianRational;
pub use parse::{format_rf, parse_rf, ParseError};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;

use core::fmt;

/// Errors from exact arithmetic. Division by an identically-zero value is the
/// only arithmetic failure; evaluation at a pole is the only evaluation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumError {
    DivisionByZero,
    PoleAtPoint,
}

impl fmt::Display for NumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumError::DivisionByZero => write!(f, "division by zero"),
            NumError::PoleAtPoint => write!(f, "evaluation at a pole"),
        }
    }
}

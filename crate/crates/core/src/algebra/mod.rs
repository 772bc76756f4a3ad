//! Exact scalars: rationals, multivariate polynomials, rational functions and
//! linear systems over the rational-function field.

mod matrix;
mod poly;
mod ratfunc;

pub use matrix::{solve_linear, RFMatrix, SolveResult};
pub use poly::{Monomial, Polynomial, Vars};
pub use ratfunc::RationalFunction;

pub(crate) use poly::fmt_rational;

use thiserror::Error;

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("division by zero")]
    DivisionByZero,
}

pub fn poly_eval(p: &Polynomial, point: &[Rational]) -> Result<Rational, AlgebraError> {
    p.eval(point)
}

pub fn poly_diff(p: &Polynomial, coord: &str) -> Result<Polynomial, AlgebraError> {
    p.diff_by(coord)
}

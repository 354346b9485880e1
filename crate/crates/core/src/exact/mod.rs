//! Exact arithmetic substrate: rationals, dense matrices over exact fields,
//! integer matrices with Smith normal form, and univariate polynomials over Q.

mod integer;
mod matrix;
mod poly;
mod rational;
mod scalar;

pub use integer::{IntegerMatrix, SmithForm};
pub use matrix::{Matrix, RationalMatrix, Rref};
pub use poly::UnivariatePolynomial;
pub use rational::{q, ParseRationalError, Rational};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
}

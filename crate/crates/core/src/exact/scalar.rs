use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::integer::IntegerMatrix;
use super::matrix::Matrix;
use super::rational::Rational;

/// An exact field in which the linear algebra of this crate runs.
///
/// Implemented by [`Rational`] and by elements of real algebraic number
/// fields. Equality must be exact.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// The value as a rational, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Exact division. Panics on a zero divisor; callers check first.
    fn div(self, rhs: &Self) -> Self {
        self * rhs.inverse().expect("exact division by zero")
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    /// Determinant hook so that rational matrices can use integer Bareiss
    /// elimination while other fields use fraction-free elimination directly.
    fn matrix_determinant(m: &Matrix<Self>) -> Self {
        m.bareiss_determinant()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        (!Rational::is_zero(self)).then(|| self.recip())
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn matrix_determinant(m: &Matrix<Self>) -> Self {
        // Scale each row to integers, run integer Bareiss, undo the scaling.
        let mut scale = Rational::one();
        let mut rows = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let row = m.row(i);
            let den = Rational::common_denominator(row.iter());
            scale *= &Rational::from_integer(den.clone());
            rows.push(row.iter().map(|x| (x * &Rational::from_integer(den.clone())).to_integer().unwrap()).collect());
        }
        let im = IntegerMatrix::from_rows(m.rows(), m.cols(), rows);
        Rational::from_integer(im.determinant()) / scale
    }
}

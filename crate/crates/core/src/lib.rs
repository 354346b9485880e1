//! Exact verification of dynamical Lefschetz trace formulas for generalized
//! algebraic Anosov maps on nilmanifolds.
//!
//! Both sides of the formula are computed along independent routes: the
//! cohomological side through Chevalley-Eilenberg complexes of an invariant
//! subalgebra, the geometric side by enumerating fixed points on `Γ\G` and
//! weighting them by local determinants. Everything is exact over `Q` or a
//! real algebraic extension `Q(α)`.

pub mod algebraic;
pub mod dynamics;
pub mod exact;
pub mod hyperbolic;
pub mod lefschetz;
pub mod lie;
pub mod samples;

pub use exact::{IntegerMatrix, Matrix, Rational, RationalMatrix, Scalar, UnivariatePolynomial};

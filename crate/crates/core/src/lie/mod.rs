//! Nilpotent Lie algebras over exact scalars: structure constants, central
//! series, endomorphisms and Chevalley-Eilenberg cohomology with traces.

mod algebra;
mod cohomology;
mod endomorphism;
mod series;

use thiserror::Error;

pub use algebra::{validate_algebra, AlgebraReport, Check, LieAlgebra, NilpotentLieAlgebra};
pub use cohomology::{
    alternating_cohomology_trace, betti_numbers, ce_complex, ce_complex_of, cohomology_trace,
    cohomology_trace_in_complex, exterior_power_dual, wedge_basis, AlternatingTrace, CEComplex,
};
pub use endomorphism::{identity_endomorphism, validate_endomorphism, validate_homomorphism, LieEndomorphism};
pub use series::{intersect_spans, lower_central_series, Subalgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("lower central series stabilizes at a nonzero term")]
    NotNilpotent,
    #[error("map does not preserve the bracket [e{i}, e{j}]")]
    NotHomomorphism { i: usize, j: usize },
    #[error("endomorphism has eigenvalue 1")]
    EigenvalueOne,
    #[error("subspace is not invariant under the map")]
    NotInvariant,
    #[error("basis vectors {a} and {b} bracket outside the span")]
    NotClosedUnderBracket { a: usize, b: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket entries must have i < j, got i = {i}, j = {j}")]
    BracketOrder { i: usize, j: usize },
    #[error("bracket entry ({i}, {j}, {k}) given twice")]
    DuplicateBracket { i: usize, j: usize, k: usize },
    #[error("differentials do not square to zero")]
    NotAComplex,
    #[error("alternating cohomology trace {cohomology} differs from det(1 - f) = {determinant}")]
    TraceIdentity { cohomology: String, determinant: String },
}

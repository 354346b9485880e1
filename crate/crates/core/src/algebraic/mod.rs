//! Real algebraic numbers: root isolation, unit-circle classification and
//! exact arithmetic in simple real extensions `Q(α)`.

mod complex;
mod factor;
mod field;
mod interval;
mod numeric;
mod roots;
mod sturm;
mod unit_circle;

use thiserror::Error;

pub use complex::{count_in_rectangle, eval_complex};
pub use factor::{partial_factor, split_square, FactorKind, RationalFactor};
pub use field::{
    field_arith, field_from_root, sign_of, to_interval, FieldDescriptor, FieldElement, FieldOp, RealAlgebraicField,
};
pub use interval::{ComplexInterval, Interval};
pub use roots::{isolate_roots, CircleClass, Region, RootEnclosure};
pub use sturm::{cauchy_index, cauchy_index_real_line, SturmChain};
pub use unit_circle::{classify_unit_circle, unit_circle_counts, UnitCircleClassification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("defining polynomial must be monic with integer coefficients")]
    NotMonicInteger,
    #[error("defining polynomial is reducible")]
    Reducible,
    #[error("irreducibility of a degree {0} defining polynomial is not verified")]
    IrreducibilityUnverified(usize),
    #[error("interval does not isolate exactly one real root")]
    NotIsolating,
}

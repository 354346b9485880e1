//! Coordinatized nilpotent Lie groups with lattice `Z^n`, polynomial
//! endomorphisms, and exact fixed-point enumeration on `Γ\G`.

mod endomorphism;
mod fixed;
mod group;
mod poly;

use thiserror::Error;

use crate::lie::LieError;

pub use endomorphism::{validate_endomorphism_map, GroupEndomorphism};
pub use fixed::{fixed_points, local_data, FixedPoint, LocalData};
pub use group::{
    bch_group_from_algebra, coordinate_layers, validate_group, GroupCheck, GroupReport, PolynomialGroup, MAX_BCH_CLASS,
};
pub use poly::{MultiPoly, PolynomialMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("nilpotency class {0} exceeds the supported maximum of 6")]
    ClassTooHigh(usize),
    #[error("the central series is not spanned by basis vectors; supply a basis adapted to it")]
    BasisNotAdapted,
    #[error("not a homomorphism at coordinate {coordinate}: {detail}")]
    NotHomomorphism { coordinate: usize, detail: String },
    #[error("coordinate {coordinate} is not integer valued on Z^n: {detail}")]
    NonIntegerCoefficients { coordinate: usize, detail: String },
    #[error("linear part has eigenvalue 1")]
    EigenvalueOne,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("layer {0} has det(I - A_j) = 0")]
    DegenerateLayer(usize),
    #[error("Z^n is not a lattice subgroup: {0}")]
    NonIntegerLattice(String),
    #[error("coordinate {coordinate} of the map is not triangular with respect to the layers")]
    NonTriangularMap { coordinate: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

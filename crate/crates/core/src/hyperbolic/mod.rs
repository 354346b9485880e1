//! Spectral splitting `g = gᵘ ⊕ gˢ ⊕ gᵉ` of a Lie algebra endomorphism, the
//! Anosov predicates, and the layerwise density test for invariant
//! subalgebras.

mod acceptability;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebraic::unit_circle_counts;
use crate::exact::{Rational, RationalMatrix};
use crate::lie::{LieEndomorphism, LieError};

pub use acceptability::{is_gamma_acceptable, spectral_acceptability, AcceptabilityReport, LayerVerdict};
pub use split::{split, Splitting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AnosovClass {
    /// No eigenvalue of modulus one.
    Anosov,
    /// No eigenvalue 1, but some eigenvalue on the unit circle.
    Generalized,
    /// Eigenvalue 1 present.
    Neither,
}

impl std::fmt::Display for AnosovClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AnosovClass::Anosov => "ANOSOV",
            AnosovClass::Generalized => "GENERALIZED",
            AnosovClass::Neither => "NEITHER",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperbolicError {
    #[error("endomorphism has eigenvalue 1")]
    EigenvalueOne,
    #[error("unsupported scalar tower: {0}")]
    UnsupportedScalarTower(String),
    #[error("eigenvalue on the unit circle has a nontrivial Jordan block (geometric multiplicity {geometric} < algebraic {algebraic})")]
    JordanOnCircle { geometric: usize, algebraic: usize },
    #[error("splitting check failed: {0}")]
    SplittingCheck(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

pub fn anosov_class_of_matrix(m: &RationalMatrix) -> AnosovClass {
    let chi = m.char_poly().expect("square matrix");
    if chi.eval(&Rational::one()).is_zero() {
        return AnosovClass::Neither;
    }
    match unit_circle_counts(&chi) {
        (_, 0, _) => AnosovClass::Anosov,
        _ => AnosovClass::Generalized,
    }
}

pub fn anosov_class(f: &LieEndomorphism<Rational>) -> AnosovClass {
    anosov_class_of_matrix(f.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{identity_endomorphism, validate_homomorphism};
    use crate::samples;

    #[test]
    fn classes_of_examples() {
        let h = samples::heisenberg();
        let f = validate_homomorphism(&h, samples::heisenberg_derivative()).unwrap();
        assert_eq!(anosov_class(&f), AnosovClass::Generalized);
        assert_eq!(anosov_class_of_matrix(&samples::cat_map()), AnosovClass::Anosov);
        assert_eq!(anosov_class(&identity_endomorphism(&h)), AnosovClass::Neither);
        assert_eq!(anosov_class_of_matrix(&RationalMatrix::from_i64_rows(&[&[-1]])), AnosovClass::Generalized);
    }
}

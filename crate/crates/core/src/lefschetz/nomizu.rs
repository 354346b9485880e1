use serde::Serialize;

use crate::lie::{betti_numbers, ce_complex_of, NilpotentLieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NomizuReport {
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    /// Whether the Euler characteristic vanishes (required for `dim > 0`).
    pub euler_ok: bool,
    /// Comparison against caller-supplied Betti numbers, if any.
    pub matches_expected: Option<bool>,
}

impl NomizuReport {
    pub fn passed(&self) -> bool {
        self.euler_ok && self.matches_expected != Some(false)
    }
}

/// Betti numbers of the nilmanifold, computed as Lie algebra cohomology.
pub fn nomizu_check(l: &NilpotentLieAlgebra, expected: Option<&[usize]>) -> NomizuReport {
    let betti = betti_numbers(&ce_complex_of(l));
    let euler_characteristic =
        betti.iter().enumerate().map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    NomizuReport {
        euler_ok: l.dim() == 0 || euler_characteristic == 0,
        matches_expected: expected.map(|e| e == betti.as_slice()),
        betti,
        euler_characteristic,
    }
}

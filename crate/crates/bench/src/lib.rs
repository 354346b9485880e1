//! Shared inputs for the criterion benchmarks.

use lefschetz_core::dynamics::{validate_endomorphism_map, GroupEndomorphism, PolynomialGroup, PolynomialMap};
use lefschetz_core::exact::{RationalMatrix, UnivariatePolynomial};
use lefschetz_core::lie::NilpotentLieAlgebra;
use lefschetz_core::samples;

/// A named group with a validated endomorphism.
pub struct MapCase {
    pub name: &'static str,
    pub group: PolynomialGroup,
    pub map: GroupEndomorphism,
}

fn case(name: &'static str, group: PolynomialGroup, map: PolynomialMap) -> MapCase {
    let map = validate_endomorphism_map(&group, map).expect("bench inputs are endomorphisms");
    MapCase { name, group, map }
}

fn torus(name: &'static str, rows: &[&[i64]]) -> MapCase {
    let m = RationalMatrix::from_i64_rows(rows);
    case(name, PolynomialGroup::abelian(m.rows()), PolynomialMap::from_matrix(&m))
}

/// Maps whose fixed points are enumerated layer by layer.
pub fn fixed_point_cases() -> Vec<MapCase> {
    vec![
        case("heisenberg", samples::heisenberg_group(), samples::heisenberg_map()),
        case("filiform4", samples::filiform_group(), samples::filiform_endomorphism(2, -1)),
        case("filiform4-large", samples::filiform_group(), samples::filiform_endomorphism(3, -2)),
        torus("torus3-det50", &[&[3, 1, 1], &[1, 3, 0], &[2, 1, 5]]),
    ]
}

/// Maps for the full trace-formula check, one per code path: an exact
/// quadratic field, a cubic field, a degenerate foliation and intervals.
pub fn verify_cases() -> Vec<MapCase> {
    vec![
        case("heisenberg", samples::heisenberg_group(), samples::heisenberg_map()),
        torus("catmap", &[&[2, 1], &[1, 1]]),
        torus("cubic", &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]),
        torus("two-fields", &[&[0, 1, 0, 0], &[1, 2, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 1]]),
    ]
}

/// Algebras of increasing cohomological weight.
pub fn algebras() -> Vec<(&'static str, NilpotentLieAlgebra)> {
    vec![
        ("heisenberg", samples::heisenberg()),
        ("filiform5", samples::filiform(5)),
        ("filiform6", samples::filiform(6)),
        ("abelian6", NilpotentLieAlgebra::abelian(6)),
    ]
}

/// Characteristic polynomials: hyperbolic, with roots on the circle, and with
/// a repeated cyclotomic factor.
pub fn polynomials() -> Vec<(&'static str, UnivariatePolynomial)> {
    let cyclo5 = UnivariatePolynomial::from_i64(&[1, 1, 1, 1, 1]);
    let hyp = UnivariatePolynomial::from_i64(&[1, -3, 1]);
    vec![
        ("catmap", hyp.clone()),
        ("degree6", UnivariatePolynomial::from_i64(&[-1, 4, -2, 7, 0, -3, 1])),
        ("cyclotomic-product", &cyclo5.pow(2) * &hyp),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_well_formed() {
        assert_eq!(fixed_point_cases().len(), 4);
        assert_eq!(verify_cases().len(), 4);
        assert!(algebras().iter().all(|(_, l)| l.dim() >= 3));
        assert!(polynomials().iter().all(|(_, p)| p.deg() >= 2));
    }
}

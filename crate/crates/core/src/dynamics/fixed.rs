//! Fixed points of `Γx ↦ Γf(x)` on `Γ\G`, solved layer by layer with Smith
//! normal forms.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::endomorphism::GroupEndomorphism;
use super::group::PolynomialGroup;
use super::poly::MultiPoly;
use super::DynamicsError;
use crate::algebraic::{CircleClass, FieldElement};
use crate::exact::{IntegerMatrix, Rational, RationalMatrix};
use crate::hyperbolic::Splitting;

/// Coset representative `x` with every coordinate in `[0, 1)`, together with
/// the lattice element `γ` certifying `γ x = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FixedPoint {
    pub coords: Vec<Rational>,
    pub gamma: Vec<Rational>,
}

/// Partial solution: outer blocks of `x` and `γ` filled in, inner ones zero.
#[derive(Clone)]
struct Branch {
    x: Vec<Rational>,
    gamma: Vec<Rational>,
}

/// Every output in block `j` must be `A_j x_j` plus terms in outer blocks.
fn check_triangular(g: &PolynomialGroup, f: &GroupEndomorphism) -> Result<(), DynamicsError> {
    let layer_of = g.layer_of();
    let a = f.linear_part();
    for (k, p) in f.map().outputs().iter().enumerate() {
        let mut rest = p.clone();
        for &i in &g.layers()[layer_of[k]] {
            rest = &rest - &MultiPoly::var(g.dim(), i).scale(&a[(k, i)]);
        }
        for (e, _) in rest.terms() {
            if e.iter().enumerate().any(|(v, &pw)| pw > 0 && layer_of[v] >= layer_of[k]) {
                return Err(DynamicsError::NonTriangularMap { coordinate: k + 1 });
            }
        }
    }
    Ok(())
}

fn to_integer_matrix(m: &RationalMatrix, layer: usize) -> Result<IntegerMatrix, DynamicsError> {
    IntegerMatrix::try_from_rational(m).ok_or_else(|| {
        DynamicsError::NonIntegerLattice(format!("layer {layer} block of the linear part is not integral"))
    })
}

/// All solutions of `(A - I) x ≡ c (mod Z^d)` with `x ∈ [0, 1)^d`, each with
/// `γ = (A - I) x - c`.
fn solve_layer(m: &IntegerMatrix, c: &[Rational]) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let d = c.len();
    let snf = m.smith_normal_form();
    let u = snf.u.to_rational();
    let v = snf.v.to_rational();
    let uc = u.mul_vec(c);
    let factors: Vec<BigInt> = snf.invariant_factors();
    let mr = m.to_rational();
    // D y ≡ U c (mod Z^d), y_i = ((U c)_i + t_i) / d_i for 0 <= t_i < d_i
    let mut ys: Vec<Vec<Rational>> = vec![Vec::new()];
    for i in 0..d {
        let di = Rational::from_integer(factors[i].clone());
        let count: usize = factors[i].clone().try_into().expect("layer determinant fits in usize");
        let mut next = Vec::with_capacity(ys.len() * count);
        for y in &ys {
            for t in 0..count {
                let mut y = y.clone();
                y.push((&uc[i] + &Rational::from(t as i64)) / &di);
                next.push(y);
            }
        }
        ys = next;
    }
    ys.into_iter()
        .map(|y| {
            let x: Vec<Rational> = v.mul_vec(&y).iter().map(Rational::fract_positive).collect();
            let gamma: Vec<Rational> = mr.mul_vec(&x).iter().zip(c).map(|(a, b)| a - b).collect();
            (x, gamma)
        })
        .collect()
}

/// Enumerates `Fix(f)` on `Γ\G` for `Γ = Z^n`. The count is asserted to be
/// `|det(1 - f_*)|` and every point is re-verified by substitution.
pub fn fixed_points(g: &PolynomialGroup, f: &GroupEndomorphism) -> Result<Vec<FixedPoint>, DynamicsError> {
    let report = super::group::validate_group(g);
    if let Some(c) = report.first_failure() {
        return Err(if c.name == "lattice_closure" {
            DynamicsError::NonIntegerLattice(c.witness.clone().unwrap_or_default())
        } else {
            DynamicsError::InvalidGroup(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        });
    }
    check_triangular(g, f)?;
    let n = g.dim();
    let a = f.linear_part();

    let mut branches = vec![Branch { x: vec![Rational::zero(); n], gamma: vec![Rational::zero(); n] }];
    let mut expected = BigInt::from(1);
    for (j, block) in g.layers().iter().enumerate() {
        let aj = a.submatrix(block, block);
        let m = to_integer_matrix(&aj.sub(&RationalMatrix::identity(block.len())), j)?;
        let det = m.determinant();
        if det.is_zero() {
            return Err(DynamicsError::DegenerateLayer(j));
        }
        expected *= num_traits::Signed::abs(&det);
        let mut next = Vec::new();
        for b in &branches {
            // (γ x)_k - f(x)_k with this layer still zero is exactly the correction term
            let gx = g.multiply(&b.gamma, &b.x);
            let fx = f.map().eval(&b.x);
            let c: Vec<Rational> = block.iter().map(|&k| &gx[k] - &fx[k]).collect();
            for (xj, gj) in solve_layer(&m, &c) {
                let mut nb = b.clone();
                for (t, &k) in block.iter().enumerate() {
                    nb.x[k] = xj[t].clone();
                    nb.gamma[k] = gj[t].clone();
                }
                next.push(nb);
            }
        }
        branches = next;
    }

    let mut points = Vec::with_capacity(branches.len());
    for b in branches {
        let lhs = g.multiply(&b.gamma, &b.x);
        let rhs = f.map().eval(&b.x);
        assert!(b.gamma.iter().all(Rational::is_integer), "non-integral γ {:?}", b.gamma);
        assert_eq!(lhs, rhs, "fixed-point equation fails at {:?}", b.x);
        points.push(FixedPoint { coords: b.x, gamma: b.gamma });
    }
    points.sort();
    let total = f.linear_part().one_minus().and_then(|m| m.determinant()).expect("square").abs();
    assert_eq!(Rational::from_integer(expected.clone()), total, "layer determinants do not multiply to |det(1 - f_*)|");
    assert_eq!(BigInt::from(points.len()), expected, "fixed-point count differs from |det(1 - f_*)|");
    Ok(points)
}

/// Local data at a fixed point. The derivative of `f` at every fixed point is
/// conjugate to `f_*`, so the values do not depend on the point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalData {
    /// Sign of `det(1 - f_*)` on the unstable summand.
    pub sign: i8,
    /// `|det(1 - f_*)|` on the stable plus neutral summands.
    pub transverse_det: FieldElement,
}

pub fn local_data(_x: &FixedPoint, splitting: &Splitting) -> LocalData {
    let sign = splitting.det_one_minus(CircleClass::Outside).sign();
    let transverse = splitting.det_one_minus(CircleClass::Inside) * splitting.det_one_minus(CircleClass::On);
    LocalData { sign, transverse_det: transverse.abs() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{validate_endomorphism_map, PolynomialMap};
    use crate::exact::q;
    use crate::hyperbolic::split;
    use crate::lie::validate_homomorphism;
    use crate::samples;

    fn v(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(a, b)| q(a, b)).collect()
    }

    #[test]
    fn heisenberg_has_four_fixed_points() {
        let g = samples::heisenberg_group();
        let f = validate_endomorphism_map(&g, samples::heisenberg_map()).unwrap();
        let pts = fixed_points(&g, &f).unwrap();
        let coords: Vec<Vec<Rational>> = pts.iter().map(|p| p.coords.clone()).collect();
        assert_eq!(
            coords,
            vec![
                v(&[(0, 1), (0, 1), (0, 1)]),
                v(&[(0, 1), (0, 1), (1, 2)]),
                v(&[(1, 2), (0, 1), (1, 8)]),
                v(&[(1, 2), (0, 1), (5, 8)]),
            ]
        );
    }

    #[test]
    fn cat_map_and_circle() {
        let g2 = PolynomialGroup::abelian(2);
        let cat = validate_endomorphism_map(&g2, PolynomialMap::from_matrix(&samples::cat_map())).unwrap();
        let pts = fixed_points(&g2, &cat).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].coords, v(&[(0, 1), (0, 1)]));

        let g1 = PolynomialGroup::abelian(1);
        let minus =
            validate_endomorphism_map(&g1, PolynomialMap::from_matrix(&RationalMatrix::from_i64_rows(&[&[-1]])))
                .unwrap();
        let pts = fixed_points(&g1, &minus).unwrap();
        assert_eq!(pts.iter().map(|p| p.coords[0].clone()).collect::<Vec<_>>(), vec![q(0, 1), q(1, 2)]);
        assert_eq!(pts[1].gamma, vec![q(-1, 1)]);
    }

    #[test]
    fn local_data_examples() {
        let h = samples::heisenberg();
        let s = split(&h, &validate_homomorphism(&h, samples::heisenberg_derivative()).unwrap()).unwrap();
        let origin = FixedPoint { coords: vec![q(0, 1); 3], gamma: vec![q(0, 1); 3] };
        let d = local_data(&origin, &s);
        assert_eq!(d.sign, -1);
        let r2 = s.scalar_extension.clone().unwrap().generator();
        assert_eq!(d.transverse_det, r2.clone() + r2);

        let l = crate::lie::LieAlgebra::abelian(2);
        let s = split(&l, &validate_homomorphism(&l, samples::cat_map()).unwrap()).unwrap();
        let d = local_data(&origin, &s);
        let r5 = s.scalar_extension.clone().unwrap().generator();
        assert_eq!(d.sign, -1);
        assert_eq!(d.transverse_det, (r5 - FieldElement::rational(q(1, 1))) * FieldElement::rational(q(1, 2)));
    }

    #[test]
    fn non_integer_group_is_refused() {
        let (g, _) = crate::dynamics::bch_group_from_algebra(&samples::heisenberg()).unwrap();
        let f = validate_endomorphism_map(
            &g,
            PolynomialMap::from_matrix(&RationalMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 4]])),
        )
        .unwrap();
        assert!(matches!(fixed_points(&g, &f).unwrap_err(), DynamicsError::NonIntegerLattice(_)));
    }
}

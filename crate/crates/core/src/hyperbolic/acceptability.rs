use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebraic::{partial_factor, unit_circle_counts, CircleClass, FieldElement};
use crate::exact::{Rational, RationalMatrix, UnivariatePolynomial};
use crate::lie::{intersect_spans, lower_central_series, LieAlgebra, LieEndomorphism, LieError, Subalgebra};

/// Density verdict for the image of `p ∩ c_j` in the torus layer `c_j / c_{j+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerVerdict {
    pub j: usize,
    pub dense: bool,
    /// Primitive integer covector, supported on the layer coordinates, that
    /// vanishes on `c_{j+1}` and on `p ∩ c_j`.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AcceptabilityReport {
    pub layers: Vec<LayerVerdict>,
    pub overall: bool,
}

fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let den = Rational::common_denominator(v.iter());
    let ints: Vec<BigInt> =
        v.iter().map(|x| (x * &Rational::from_integer(den.clone())).to_integer().unwrap()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

/// Layerwise density test for the standard lattice `Z^n` of the defining
/// basis. Entries of `p` in `Q(α)` are expanded in the power basis of `α`,
/// which turns the annihilator condition into a rational linear system.
pub fn is_gamma_acceptable(p: &Subalgebra<FieldElement>) -> Result<AcceptabilityReport, LieError> {
    let parent = p.parent();
    let n = parent.dim();
    let series = lower_central_series(parent)?;
    let to_rational = |v: &Vec<FieldElement>| -> Vec<Rational> {
        v.iter().map(|x| x.to_rational().expect("structure constants are rational")).collect()
    };
    let degree = p.basis().iter().flatten().map(|x| x.coords().len()).max().unwrap_or(1);

    let mut layers = Vec::new();
    for j in 0..series.len() - 1 {
        let cj: Vec<Vec<Rational>> = series[j].basis().iter().map(to_rational).collect();
        let next: Vec<Vec<Rational>> = series[j + 1].basis().iter().map(to_rational).collect();
        // Coordinates on which c_j projects isomorphically; witnesses live there.
        let support = RationalMatrix::from_rows(cj).rref().pivot_columns;
        let pj = intersect_spans(n, p.basis(), series[j].basis());

        let mut rows: Vec<Vec<Rational>> =
            next.iter().map(|b| support.iter().map(|&i| b[i].clone()).collect()).collect();
        for v in &pj {
            for k in 0..degree {
                rows.push(
                    support.iter().map(|&i| v[i].coords().get(k).cloned().unwrap_or_else(Rational::zero)).collect(),
                );
            }
        }
        let kernel = if rows.is_empty() {
            (0..support.len())
                .map(|i| (0..support.len()).map(|k| Rational::from(i64::from(k == i))).collect())
                .collect()
        } else {
            RationalMatrix::from_rows(rows).kernel_basis()
        };
        let witness = kernel.into_iter().next().map(|w| {
            let mut full = vec![Rational::zero(); n];
            for (&i, x) in support.iter().zip(w) {
                full[i] = x;
            }
            primitive(full)
        });
        layers.push(LayerVerdict { j, dense: witness.is_none(), witness });
    }
    let overall = layers.iter().all(|l| l.dense);
    Ok(AcceptabilityReport { layers, overall })
}

fn eval_at(p: &UnivariatePolynomial, f: &RationalMatrix) -> RationalMatrix {
    let n = f.rows();
    p.coeffs()
        .iter()
        .rev()
        .fold(RationalMatrix::zeros(n, n), |acc, c| acc.mul(f).add(&RationalMatrix::identity(n).scale(c)))
}

/// Covectors on the `support` coordinates that vanish on `span`, padded to
/// full length; the first one made primitive.
fn first_annihilator(n: usize, support: &[usize], span: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let kernel = if span.is_empty() {
        (0..support.len()).map(|i| (0..support.len()).map(|k| Rational::from(i64::from(k == i))).collect()).collect()
    } else {
        RationalMatrix::from_rows(span.iter().map(|b| support.iter().map(|&i| b[i].clone()).collect()).collect())
            .kernel_basis()
    };
    kernel.into_iter().next().map(|w| {
        let mut full = vec![Rational::zero(); n];
        for (&i, x) in support.iter().zip(w) {
            full[i] = x;
        }
        primitive(full)
    })
}

/// Acceptability of the sum of generalized eigenspaces of `f` whose
/// eigenvalues lie in `class`, decided without constructing it.
///
/// The image of that subspace in a layer `V = c_j / c_{j+1}` is the
/// corresponding spectral subspace of the induced map, and its rational
/// closure is `ker P(f|V)` where `P` collects the rational prime-power
/// factors of the layer's characteristic polynomial having at least one
/// root in `class` (Galois conjugates of one root span the whole factor).
/// Returns `None` when a layer polynomial has a factor of degree six or more
/// that could not be proven irreducible.
pub fn spectral_acceptability(
    l: &LieAlgebra<Rational>,
    f: &LieEndomorphism<Rational>,
    class: CircleClass,
) -> Result<Option<AcceptabilityReport>, LieError> {
    let n = l.dim();
    let series = lower_central_series(l)?;
    let mut layers = Vec::new();
    for j in 0..series.len() - 1 {
        let (cj, next) = (&series[j], &series[j + 1]);
        let chi = f.restrict(cj)?.char_poly().expect("square");
        let chi_next = match next.dim() {
            0 => UnivariatePolynomial::one(),
            _ => f.restrict(next)?.char_poly().expect("square"),
        };
        let layer_poly = chi.exact_div(&chi_next).expect("invariant subspace");
        let mut closure_poly = UnivariatePolynomial::one();
        for factor in partial_factor(&layer_poly) {
            if !factor.is_irreducible() {
                return Ok(None);
            }
            let (inside, on, outside) = unit_circle_counts(&factor.poly);
            let hit = match class {
                CircleClass::Inside => inside,
                CircleClass::On => on,
                CircleClass::Outside => outside,
            };
            if hit > 0 {
                closure_poly = &closure_poly * &factor.poly.pow(factor.multiplicity);
            }
        }
        // closure = { v in c_j : P(f) v in c_{j+1} }
        let image = eval_at(&closure_poly, f.matrix());
        // rows of `off_next` cut out c_{j+1}
        let off_next = match next.dim() {
            0 => RationalMatrix::identity(n),
            _ => RationalMatrix::from_rows(RationalMatrix::from_rows(next.basis().to_vec()).kernel_basis()),
        };
        let basis = cj.basis_matrix();
        let closure: Vec<Vec<Rational>> =
            off_next.mul(&image).mul(&basis).kernel_basis().iter().map(|y| basis.mul_vec(y)).collect();
        let support = RationalMatrix::from_rows(cj.basis().to_vec()).rref().pivot_columns;
        let witness = first_annihilator(n, &support, &closure);
        layers.push(LayerVerdict { j, dense: witness.is_none(), witness });
    }
    let overall = layers.iter().all(|l| l.dense);
    Ok(Some(AcceptabilityReport { layers, overall }))
}

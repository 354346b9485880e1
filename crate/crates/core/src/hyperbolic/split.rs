use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::HyperbolicError;
use crate::algebraic::{
    classify_unit_circle, field_from_root, partial_factor, split_square, unit_circle_counts, CircleClass, FactorKind,
    FieldElement, RationalFactor, RealAlgebraicField, Region, RootEnclosure, UnitCircleClassification,
};
use crate::exact::{Matrix, Rational, Scalar};
use crate::lie::{LieEndomorphism, NilpotentLieAlgebra, Subalgebra};

const CLASSES: [CircleClass; 3] = [CircleClass::Outside, CircleClass::Inside, CircleClass::On];

/// `g = gᵘ ⊕ gˢ ⊕ gᵉ`, with every summand over one real field `Q(α)` (or `Q`).
#[derive(Debug, Clone)]
pub struct Splitting {
    pub unstable: Subalgebra<FieldElement>,
    pub stable: Subalgebra<FieldElement>,
    pub neutral: Subalgebra<FieldElement>,
    /// Certified roots of the characteristic polynomial with multiplicities.
    pub eigen_data: Vec<(RootEnclosure, u32)>,
    pub scalar_extension: Option<Arc<RealAlgebraicField>>,
    map: LieEndomorphism<FieldElement>,
}

impl Splitting {
    pub fn summand(&self, class: CircleClass) -> &Subalgebra<FieldElement> {
        match class {
            CircleClass::Outside => &self.unstable,
            CircleClass::Inside => &self.stable,
            CircleClass::On => &self.neutral,
        }
    }

    /// `(dim gᵘ, dim gˢ, dim gᵉ)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.unstable.dim(), self.stable.dim(), self.neutral.dim())
    }

    /// The endomorphism with scalars extended to the splitting field.
    pub fn map(&self) -> &LieEndomorphism<FieldElement> {
        &self.map
    }

    /// `det(1 - f)` restricted to one summand; 1 on the zero space.
    pub fn det_one_minus(&self, class: CircleClass) -> FieldElement {
        det_one_minus_on(&self.map, self.summand(class)).expect("summands are invariant")
    }
}

pub(crate) fn det_one_minus_on(
    f: &LieEndomorphism<FieldElement>,
    p: &Subalgebra<FieldElement>,
) -> Result<FieldElement, HyperbolicError> {
    if p.dim() == 0 {
        return Ok(FieldElement::one());
    }
    Ok(f.restrict(p)?.one_minus().and_then(|m| m.determinant()).expect("square"))
}

/// A polynomial in `f` (ascending coefficients), raised to `power`.
#[derive(Debug, Clone)]
struct Piece {
    coeffs: Vec<FieldElement>,
    power: u32,
}

impl Piece {
    fn rational(p: &crate::exact::UnivariatePolynomial, power: u32) -> Self {
        Piece { coeffs: p.coeffs().iter().cloned().map(FieldElement::rational).collect(), power }
    }

    fn degree(&self) -> usize {
        (self.coeffs.len() - 1) * self.power as usize
    }
}

fn class_of(x: &FieldElement) -> CircleClass {
    match (x.abs() - FieldElement::one()).sign() {
        1 => CircleClass::Outside,
        -1 => CircleClass::Inside,
        _ => CircleClass::On,
    }
}

fn adopt_field(
    current: &mut Option<Arc<RealAlgebraicField>>,
    new: Option<Arc<RealAlgebraicField>>,
) -> Result<(), HyperbolicError> {
    match (current.as_ref(), new) {
        (_, None) => Ok(()),
        (None, Some(n)) => {
            *current = Some(n);
            Ok(())
        }
        (Some(c), Some(n)) if **c == *n => Ok(()),
        (Some(c), Some(n)) => {
            Err(HyperbolicError::UnsupportedScalarTower(format!("eigenvalues need both {:?} and {:?}", c, n)))
        }
    }
}

/// The field needed by a split factor and its two single-class pieces.
type FactorSplit = (Option<Arc<RealAlgebraicField>>, (CircleClass, Piece), (CircleClass, Piece));

/// Splits a factor whose roots fall in two classes into a linear factor
/// `x - λ` and a cofactor with all roots in a single class.
fn split_factor(
    factor: &RationalFactor,
    counts: [usize; 3],
    whole: &UnitCircleClassification,
) -> Result<FactorSplit, HyperbolicError> {
    let q = &factor.poly;
    let m = factor.multiplicity;
    let unsupported = |why: &str| HyperbolicError::UnsupportedScalarTower(format!("factor {q}: {why}"));
    if factor.kind == FactorKind::Unknown {
        return Err(unsupported("cannot certify irreducibility of a factor with mixed circle classes"));
    }
    if q.deg() == 2 {
        // x^2 + b x + c with real roots (-b ± √disc) / 2
        let (b, c) = (q.coeff(1), q.coeff(0));
        let disc = &(&b * &b) - &(&c * &Rational::from(4));
        let den = disc.denom();
        let (k, d) = split_square(&(disc.numer() * den));
        let root_part = Rational::from_integer(k) / Rational::from_integer(den.clone());
        let (field, sqrt_disc) = if d == 1.into() {
            (None, FieldElement::rational(root_part))
        } else {
            let f = RealAlgebraicField::sqrt(&d).map_err(|e| unsupported(&e.to_string()))?;
            (Some(f.clone()), f.generator() * FieldElement::rational(root_part))
        };
        let half = FieldElement::rational(Rational::new(1, 2));
        let minus_b = FieldElement::rational(-b);
        let hi = (minus_b.clone() + sqrt_disc.clone()) * half.clone();
        let lo = (minus_b - sqrt_disc) * half;
        let one = FieldElement::one();
        return Ok((
            field,
            (class_of(&hi), Piece { coeffs: vec![-hi, one.clone()], power: m }),
            (class_of(&lo), Piece { coeffs: vec![-lo, one], power: m }),
        ));
    }
    if !q.has_integer_coefficients() {
        return Err(unsupported("non-integral factor of degree three or more"));
    }
    // A class holding exactly one root, which is real, gives Q(λ).
    let own;
    let classification = if whole.enclosures.iter().all(|e| e.squarefree() == q) {
        whole
    } else {
        own = classify_unit_circle(q);
        &own
    };
    let lone = CLASSES.iter().enumerate().find_map(|(i, &class)| {
        (counts[i] == 1).then(|| {
            classification
                .enclosures
                .iter()
                .find(|e| e.circle_class == Some(class) && e.is_real())
                .map(|e| (class, e.region.clone()))
        })?
    });
    let Some((class, Region::Real(iv))) = lone else {
        return Err(unsupported("no class consists of a single real root"));
    };
    let rest: Vec<CircleClass> = CLASSES
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != class)
        .filter(|&(i, _)| counts[i] > 0)
        .map(|(_, &c)| c)
        .collect();
    if rest.len() != 1 {
        return Err(unsupported("remaining roots span several classes"));
    }
    let field = field_from_root(q, &iv, true).map_err(|e| unsupported(&e.to_string()))?;
    let lambda = field.generator();
    // synthetic division q / (x - λ)
    let n = q.deg();
    let mut cofactor = vec![FieldElement::zero(); n];
    cofactor[n - 1] = FieldElement::rational(q.coeff(n));
    for i in (1..n).rev() {
        cofactor[i - 1] = FieldElement::rational(q.coeff(i)) + lambda.clone() * cofactor[i].clone();
    }
    Ok((
        Some(field),
        (class, Piece { coeffs: vec![-lambda, FieldElement::one()], power: m }),
        (rest[0], Piece { coeffs: cofactor, power: m }),
    ))
}

fn class_index(c: CircleClass) -> usize {
    CLASSES.iter().position(|&x| x == c).unwrap()
}

fn evaluate(f: &Matrix<FieldElement>, pieces: &[Piece], with_powers: bool) -> Matrix<FieldElement> {
    let n = f.rows();
    pieces.iter().fold(Matrix::identity(n), |acc, p| {
        let m = f.eval_poly(&p.coeffs);
        acc.mul(&if with_powers { m.pow(p.power) } else { m })
    })
}

/// Reduced row echelon basis of a span, so equal spans print identically.
fn canonical_basis<S: Scalar>(vectors: Vec<Vec<S>>) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return vectors;
    }
    let r = Matrix::from_rows(vectors).rref();
    (0..r.rank).map(|i| r.reduced.row(i)).collect()
}

/// Generalized eigenspace splitting of `f` by circle class, verified exactly.
pub fn split(l: &NilpotentLieAlgebra, f: &LieEndomorphism<Rational>) -> Result<Splitting, HyperbolicError> {
    let n = l.dim();
    let chi = f.matrix().char_poly().expect("square");
    if chi.eval(&Rational::one()).is_zero() {
        return Err(HyperbolicError::EigenvalueOne);
    }

    let whole = classify_unit_circle(&chi);
    let mut field = None;
    let mut pieces: [Vec<Piece>; 3] = Default::default();
    for factor in partial_factor(&chi) {
        let (inside, on, outside) = unit_circle_counts(&factor.poly);
        let counts = [outside, inside, on];
        let occupied: Vec<usize> = (0..3).filter(|&i| counts[i] > 0).collect();
        if occupied.len() == 1 {
            pieces[occupied[0]].push(Piece::rational(&factor.poly, factor.multiplicity));
            continue;
        }
        let (new_field, (c1, p1), (c2, p2)) = split_factor(&factor, counts, &whole)?;
        adopt_field(&mut field, new_field)?;
        pieces[class_index(c1)].push(p1);
        pieces[class_index(c2)].push(p2);
    }

    let lk = l.map_scalars(|c| FieldElement::rational(c.clone()));
    let fk = f.map_scalars(|c| FieldElement::rational(c.clone()));
    let mut summands = Vec::with_capacity(3);
    for (i, class) in CLASSES.iter().enumerate() {
        let algebraic: usize = pieces[i].iter().map(Piece::degree).sum();
        let basis = if pieces[i].is_empty() {
            Vec::new()
        } else {
            canonical_basis(evaluate(fk.matrix(), &pieces[i], true).kernel_basis())
        };
        if basis.len() != algebraic {
            return Err(HyperbolicError::SplittingCheck(format!(
                "{class:?} summand has dimension {} but multiplicity {algebraic}",
                basis.len()
            )));
        }
        if *class == CircleClass::On && algebraic > 0 {
            let geometric = evaluate(fk.matrix(), &pieces[i], false).kernel_basis().len();
            if geometric < algebraic {
                return Err(HyperbolicError::JordanOnCircle { geometric, algebraic });
            }
        }
        let sub = Subalgebra::new(&lk, basis)
            .map_err(|e| HyperbolicError::SplittingCheck(format!("{class:?} summand: {e}")))?;
        fk.restrict(&sub).map_err(|e| HyperbolicError::SplittingCheck(format!("{class:?} summand: {e}")))?;
        summands.push(sub);
    }

    let all: Vec<Vec<FieldElement>> = summands.iter().flat_map(|s| s.basis().to_vec()).collect();
    if all.len() != n || (n > 0 && Matrix::from_rows(all).rank() != n) {
        return Err(HyperbolicError::SplittingCheck("summands do not form a direct sum".into()));
    }
    let product =
        summands.iter().map(|s| det_one_minus_on(&fk, s)).try_fold(FieldElement::one(), |acc, d| d.map(|d| acc * d))?;
    if product != fk.det_one_minus() {
        return Err(HyperbolicError::SplittingCheck(
            "determinants of the summands do not multiply to det(1 - f)".into(),
        ));
    }

    let eigen_data = whole.enclosures.into_iter().map(|e| {
        let m = e.multiplicity;
        (e, m)
    });
    let mut it = summands.into_iter();
    Ok(Splitting {
        unstable: it.next().unwrap(),
        stable: it.next().unwrap(),
        neutral: it.next().unwrap(),
        eigen_data: eigen_data.collect(),
        scalar_extension: field,
        map: fk,
    })
}

/// Basis entries are coordinate lists in the power basis of the extension
/// when there is one, plain rationals otherwise.
fn entry_coords(x: &FieldElement, degree: usize) -> Vec<Rational> {
    (0..degree).map(|k| x.coords().get(k).cloned().unwrap_or_else(Rational::zero)).collect()
}

struct SummandRepr<'a>(&'a Subalgebra<FieldElement>, Option<usize>);

impl Serialize for SummandRepr<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Summand", 2)?;
        st.serialize_field("dim", &self.0.dim())?;
        match self.1 {
            Some(d) => {
                let basis: Vec<Vec<Vec<Rational>>> =
                    self.0.basis().iter().map(|v| v.iter().map(|x| entry_coords(x, d)).collect()).collect();
                st.serialize_field("basis", &basis)?;
            }
            None => {
                let basis: Vec<Vec<Rational>> = self
                    .0
                    .basis()
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_rational().expect("rational summand")).collect())
                    .collect();
                st.serialize_field("basis", &basis)?;
            }
        }
        st.end()
    }
}

#[derive(Serialize)]
struct EigenRepr<'a> {
    region: &'a Region,
    multiplicity: u32,
    circle_class: Option<CircleClass>,
}

impl Serialize for Splitting {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let degree = self.scalar_extension.as_ref().map(|f| f.degree());
        let mut st = serializer.serialize_struct("Splitting", 5)?;
        st.serialize_field("scalar_extension", &self.scalar_extension.as_ref().map(|f| f.descriptor()))?;
        st.serialize_field("unstable", &SummandRepr(&self.unstable, degree))?;
        st.serialize_field("stable", &SummandRepr(&self.stable, degree))?;
        st.serialize_field("neutral", &SummandRepr(&self.neutral, degree))?;
        let eigen: Vec<EigenRepr> = self
            .eigen_data
            .iter()
            .map(|(e, m)| EigenRepr { region: &e.region, multiplicity: *m, circle_class: e.circle_class })
            .collect();
        st.serialize_field("eigen_data", &eigen)?;
        st.end()
    }
}

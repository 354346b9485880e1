//! Both sides of the leafwise Lefschetz formula for an invariant
//! foliation: the alternating cohomology trace of `f^*` on `H^*(p)`, the
//! determinant `det(1 - f_*|p)`, and the fixed-point sum
//! `Σ ε_x / |det(1 - f_*|g/p)|`.

mod interval_mode;
mod nomizu;
mod render;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebraic::{CircleClass, FieldDescriptor, FieldElement, Interval};
use crate::dynamics::{fixed_points, local_data, DynamicsError, FixedPoint, GroupEndomorphism, PolynomialGroup};
use crate::exact::{Rational, Scalar};
use crate::hyperbolic::{
    anosov_class_of_matrix, is_gamma_acceptable, spectral_acceptability, split, AcceptabilityReport, AnosovClass,
    HyperbolicError,
};
use crate::lie::{
    ce_complex, cohomology_trace_in_complex, validate_homomorphism, LieEndomorphism, LieError, Subalgebra,
};

pub use nomizu::{nomizu_check, NomizuReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("endomorphism has eigenvalue 1; the trace formula is undefined")]
    EigenvalueOne,
    #[error("invalid foliation: {0}")]
    InvalidFoliation(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Which `f_*`-invariant subalgebra `p` defines the foliation.
#[derive(Debug, Clone, PartialEq)]
pub enum FoliationChoice {
    Unstable,
    Stable,
    Zero,
    /// Basis of a bracket-closed, `f_*`-invariant subspace.
    Custom(Vec<Vec<FieldElement>>),
}

impl FoliationChoice {
    pub fn kind(&self) -> &'static str {
        match self {
            FoliationChoice::Unstable => "UNSTABLE",
            FoliationChoice::Stable => "STABLE",
            FoliationChoice::Zero => "ZERO",
            FoliationChoice::Custom(_) => "CUSTOM",
        }
    }
}

/// A reported quantity: exact in `Q` or `Q(α)`, or a certified interval.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportScalar {
    Exact(FieldElement),
    Interval(Interval),
}

impl ReportScalar {
    pub fn as_exact(&self) -> Option<&FieldElement> {
        match self {
            ReportScalar::Exact(e) => Some(e),
            ReportScalar::Interval(_) => None,
        }
    }

    /// Enclosure of the value, exact ones refined to `width`.
    pub fn enclosure(&self, width: &Rational) -> Interval {
        match self {
            ReportScalar::Exact(e) => e.to_interval(width),
            ReportScalar::Interval(iv) => iv.clone(),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            ReportScalar::Exact(e) => e.to_f64(),
            ReportScalar::Interval(iv) => iv.midpoint().to_f64(),
        }
    }
}

impl std::fmt::Display for ReportScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportScalar::Exact(e) => write!(f, "{e}"),
            ReportScalar::Interval(iv) => {
                write!(f, "[{:.15}, {:.15}]", iv.lo.to_f64(), iv.hi.to_f64())
            }
        }
    }
}

impl Serialize for ReportScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = serializer.serialize_map(Some(3))?;
        match self {
            ReportScalar::Exact(e) => {
                let field: Option<FieldDescriptor> = e.field().filter(|_| !e.is_rational()).map(|f| f.descriptor());
                let coords: Vec<Rational> =
                    if field.is_some() { e.coords().to_vec() } else { vec![e.to_rational().expect("rational")] };
                m.serialize_entry("field", &field)?;
                m.serialize_entry("coords", &coords)?;
            }
            ReportScalar::Interval(iv) => {
                m.serialize_entry("interval", &[&iv.lo, &iv.hi])?;
            }
        }
        m.serialize_entry("approx", &self.approx())?;
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ExactEqual,
    IntervalConsistent { width: Rational },
    Mismatch,
}

impl Verdict {
    pub fn is_success(&self) -> bool {
        !matches!(self, Verdict::Mismatch)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::ExactEqual => f.write_str("EXACT_EQUAL"),
            Verdict::IntervalConsistent { width } => write!(f, "INTERVAL_CONSISTENT (width {:.3e})", width.to_f64()),
            Verdict::Mismatch => f.write_str("MISMATCH"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LefschetzReport {
    pub foliation: &'static str,
    pub foliation_dim: usize,
    pub anosov_class: AnosovClass,
    /// Field of the exact values; `None` for rational values or interval mode.
    pub scalar_field: Option<FieldDescriptor>,
    /// `Tr(f^* | H^p(p))` for each degree; empty in interval mode.
    pub cohomology_traces: Vec<ReportScalar>,
    pub lhs_cohomology: ReportScalar,
    pub lhs_determinant: ReportScalar,
    pub rhs_fixed_point_sum: ReportScalar,
    pub det_one_minus_full: Rational,
    pub fixed_point_count: usize,
    pub fixed_points: Vec<FixedPoint>,
    /// Sign of `det(1 - f_*|p)`, the same at every fixed point.
    pub local_sign: i8,
    /// `|det(1 - f_*|g/p)|`, the same at every fixed point.
    pub transverse_det: ReportScalar,
    /// Density of `p` in the torus layers; `None` in interval mode.
    pub acceptability: Option<AcceptabilityReport>,
    pub verdict: Verdict,
}

/// Default width target for interval mode, relative to the magnitude.
pub fn default_precision() -> Rational {
    Rational::pow2(-64)
}

/// Computes the three quantities by independent routes and certifies their
/// equality, exactly when the foliation is defined over a single `Q(α)` and
/// by interval overlap otherwise.
pub fn verify(
    g: &PolynomialGroup,
    f: &GroupEndomorphism,
    choice: &FoliationChoice,
    precision: &Rational,
) -> Result<LefschetzReport, LefschetzError> {
    let fstar = f.linear_part();
    let class = anosov_class_of_matrix(fstar);
    if class == AnosovClass::Neither {
        return Err(LefschetzError::EigenvalueOne);
    }
    let l = g.lie_algebra();
    let lf = validate_homomorphism(&l, fstar.clone())?;
    let points = fixed_points(g, f)?;
    let det_g = fstar.one_minus().and_then(|m| m.determinant()).expect("square");

    let (p, fl, splitting) = match choice {
        FoliationChoice::Unstable | FoliationChoice::Stable => match split(&l, &lf) {
            Ok(s) => {
                let cls = if *choice == FoliationChoice::Unstable { CircleClass::Outside } else { CircleClass::Inside };
                (s.summand(cls).clone(), s.map().clone(), Some(s))
            }
            Err(HyperbolicError::UnsupportedScalarTower(_)) => {
                let side =
                    if *choice == FoliationChoice::Unstable { CircleClass::Outside } else { CircleClass::Inside };
                let mut report = interval_mode::verify(fstar, choice, points, class, precision);
                report.acceptability = spectral_acceptability(&l, &lf, side)?;
                return Ok(report);
            }
            Err(e) => return Err(e.into()),
        },
        FoliationChoice::Zero => {
            let lq = l.map_scalars(|x| FieldElement::rational(x.clone()));
            (Subalgebra::zero(&lq), lf.map_scalars(|x| FieldElement::rational(x.clone())), None)
        }
        FoliationChoice::Custom(basis) => {
            let lq = l.map_scalars(|x| FieldElement::rational(x.clone()));
            let p = Subalgebra::new(&lq, basis.clone()).map_err(|e| LefschetzError::InvalidFoliation(e.to_string()))?;
            (p, lf.map_scalars(|x| FieldElement::rational(x.clone())), None)
        }
    };
    exact_mode(&p, &fl, choice, splitting.as_ref(), points, class, det_g)
}

fn exact_mode(
    p: &Subalgebra<FieldElement>,
    fl: &LieEndomorphism<FieldElement>,
    choice: &FoliationChoice,
    splitting: Option<&crate::hyperbolic::Splitting>,
    points: Vec<FixedPoint>,
    class: AnosovClass,
    det_g: Rational,
) -> Result<LefschetzReport, LefschetzError> {
    let restricted =
        fl.restrict(p).map_err(|_| LefschetzError::InvalidFoliation("subspace is not f_*-invariant".into()))?;

    // cohomology of the Chevalley-Eilenberg complex of p
    let complex = ce_complex(p)?;
    let traces =
        (0..=p.dim()).map(|k| cohomology_trace_in_complex(&complex, &restricted, k)).collect::<Result<Vec<_>, _>>()?;
    let lhs_cohomology = traces.iter().enumerate().fold(FieldElement::zero(), |acc, (k, t)| {
        if k % 2 == 0 {
            acc + t.clone()
        } else {
            acc - t.clone()
        }
    });

    // determinant of the restriction
    let lhs_determinant = if p.dim() == 0 {
        FieldElement::one()
    } else {
        restricted.one_minus().and_then(|m| m.determinant()).expect("square")
    };

    // fixed-point side
    let det_g_field = FieldElement::rational(det_g.clone());
    let quotient = det_g_field.clone() * lhs_determinant.try_inverse().map_err(|_| LefschetzError::EigenvalueOne)?;
    let (sign, transverse) = match (choice, splitting, points.first()) {
        (FoliationChoice::Unstable, Some(s), Some(x)) => {
            let d = local_data(x, s);
            (d.sign, d.transverse_det)
        }
        _ => (lhs_determinant.sign(), quotient.abs()),
    };
    let local_value =
        FieldElement::rational(Rational::from(i64::from(sign))) * transverse.try_inverse().expect("nonzero");
    let mut rhs = FieldElement::zero();
    for x in &points {
        let per_point = match (choice, splitting) {
            (FoliationChoice::Unstable, Some(s)) => {
                let d = local_data(x, s);
                FieldElement::rational(Rational::from(i64::from(d.sign)))
                    * d.transverse_det.try_inverse().expect("nonzero")
            }
            _ => local_value.clone(),
        };
        rhs = rhs + per_point;
    }
    let count = FieldElement::rational(Rational::from(points.len() as i64));
    assert_eq!(rhs, count * local_value, "fixed-point sum differs from count times the local value");

    let consistent = transverse == quotient.abs() && sign == lhs_determinant.sign();
    let verdict = if consistent && lhs_cohomology == lhs_determinant && lhs_determinant == rhs {
        Verdict::ExactEqual
    } else {
        Verdict::Mismatch
    };
    let scalar_field = [&lhs_cohomology, &lhs_determinant, &rhs]
        .iter()
        .find(|e| !e.is_rational())
        .and_then(|e| e.field())
        .map(|f| f.descriptor());
    Ok(LefschetzReport {
        foliation: choice.kind(),
        foliation_dim: p.dim(),
        anosov_class: class,
        scalar_field,
        cohomology_traces: traces.into_iter().map(ReportScalar::Exact).collect(),
        lhs_cohomology: ReportScalar::Exact(lhs_cohomology),
        lhs_determinant: ReportScalar::Exact(lhs_determinant),
        rhs_fixed_point_sum: ReportScalar::Exact(rhs),
        det_one_minus_full: det_g,
        fixed_point_count: points.len(),
        fixed_points: points,
        local_sign: sign,
        transverse_det: ReportScalar::Exact(transverse),
        acceptability: Some(is_gamma_acceptable(p)?),
        verdict,
    })
}

impl LefschetzReport {
    pub fn to_text(&self) -> String {
        render::text(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{validate_endomorphism_map, PolynomialMap};
    use crate::exact::{q, RationalMatrix};
    use crate::samples;

    fn heisenberg() -> (PolynomialGroup, GroupEndomorphism) {
        let g = samples::heisenberg_group();
        let f = validate_endomorphism_map(&g, samples::heisenberg_map()).unwrap();
        (g, f)
    }

    fn torus(m: &RationalMatrix) -> (PolynomialGroup, GroupEndomorphism) {
        let g = PolynomialGroup::abelian(m.rows());
        let f = validate_endomorphism_map(&g, PolynomialMap::from_matrix(m)).unwrap();
        (g, f)
    }

    fn exact(s: &ReportScalar) -> FieldElement {
        s.as_exact().unwrap().clone()
    }

    #[test]
    fn heisenberg_unstable() {
        let (g, f) = heisenberg();
        let r = verify(&g, &f, &FoliationChoice::Unstable, &default_precision()).unwrap();
        assert_eq!(r.verdict, Verdict::ExactEqual);
        assert_eq!(r.fixed_point_count, 4);
        assert_eq!(r.det_one_minus_full, q(-4, 1));
        let v = exact(&r.lhs_cohomology);
        let r2 = v.field().unwrap().generator();
        assert_eq!(v, -r2.clone());
        assert_eq!(exact(&r.rhs_fixed_point_sum), -r2.clone());
        assert_eq!(exact(&r.transverse_det), r2.clone() + r2);
        assert_eq!(r.local_sign, -1);
        assert_eq!(r.anosov_class, AnosovClass::Generalized);
        assert!(!r.acceptability.unwrap().overall);
    }

    #[test]
    fn cat_map_unstable() {
        let (g, f) = torus(&samples::cat_map());
        let r = verify(&g, &f, &FoliationChoice::Unstable, &default_precision()).unwrap();
        assert_eq!(r.verdict, Verdict::ExactEqual);
        assert_eq!(r.fixed_point_count, 1);
        let v = exact(&r.lhs_determinant);
        let r5 = v.field().unwrap().generator();
        assert_eq!(v, -(FieldElement::one() + r5) * FieldElement::rational(q(1, 2)));
        assert!(r.acceptability.unwrap().overall);
    }

    #[test]
    fn circle_zero_foliation() {
        let (g, f) = torus(&RationalMatrix::from_i64_rows(&[&[-1]]));
        let r = verify(&g, &f, &FoliationChoice::Zero, &default_precision()).unwrap();
        assert_eq!(r.verdict, Verdict::ExactEqual);
        assert_eq!(r.fixed_point_count, 2);
        assert_eq!(exact(&r.lhs_cohomology), FieldElement::one());
        assert_eq!(exact(&r.transverse_det), FieldElement::rational(q(2, 1)));
        assert_eq!(r.local_sign, 1);
        assert!(r.scalar_field.is_none());
    }

    #[test]
    fn stable_and_unstable_factor_the_full_determinant() {
        let (g, f) = heisenberg();
        let u = verify(&g, &f, &FoliationChoice::Unstable, &default_precision()).unwrap();
        let s = verify(&g, &f, &FoliationChoice::Stable, &default_precision()).unwrap();
        assert_eq!(s.verdict, Verdict::ExactEqual);
        let neutral = FieldElement::rational(q(2, 1));
        assert_eq!(exact(&u.lhs_determinant) * exact(&s.lhs_determinant) * neutral, FieldElement::rational(q(-4, 1)));
        // the stable run's transverse space is gᵘ ⊕ gᵉ
        assert_eq!(exact(&s.transverse_det), exact(&u.lhs_determinant).abs() * FieldElement::rational(q(2, 1)));
    }

    #[test]
    fn custom_center_foliation() {
        let (g, f) = heisenberg();
        let center = vec![vec![FieldElement::zero(), FieldElement::zero(), FieldElement::one()]];
        let r = verify(&g, &f, &FoliationChoice::Custom(center), &default_precision()).unwrap();
        assert_eq!(r.verdict, Verdict::ExactEqual);
        assert_eq!(exact(&r.lhs_cohomology), FieldElement::rational(q(2, 1)));
        let line = vec![vec![FieldElement::one(), FieldElement::zero(), FieldElement::zero()]];
        assert!(matches!(
            verify(&g, &f, &FoliationChoice::Custom(line), &default_precision()),
            Err(LefschetzError::InvalidFoliation(_))
        ));
    }

    #[test]
    fn two_quadratic_fields_fall_back_to_intervals() {
        // x^2 - 2x - 1 (roots 1 ± √2) next to the cat map
        let m = RationalMatrix::from_i64_rows(&[&[0, 1, 0, 0], &[1, 2, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 1]]);
        let (g, f) = torus(&m);
        let r = verify(&g, &f, &FoliationChoice::Unstable, &default_precision()).unwrap();
        assert!(matches!(r.verdict, Verdict::IntervalConsistent { .. }), "{:?}", r.verdict);
        assert_eq!(r.fixed_point_count, 2);
        let expected = std::f64::consts::SQRT_2 * (1.0 + 5f64.sqrt()) / 2.0;
        for v in [&r.lhs_cohomology, &r.lhs_determinant, &r.rhs_fixed_point_sum] {
            assert!((v.approx() - expected).abs() < 1e-12, "{v}");
            let ReportScalar::Interval(iv) = v else { panic!("expected interval") };
            assert!(iv.width() <= default_precision() * Rational::from(8));
        }
        assert!(r.acceptability.unwrap().overall);
    }

    #[test]
    fn filiform_generalized_map() {
        let g = samples::filiform_group();
        let f = validate_endomorphism_map(&g, samples::filiform_endomorphism(2, -1)).unwrap();
        let r = verify(&g, &f, &FoliationChoice::Unstable, &default_precision()).unwrap();
        assert_eq!(r.verdict, Verdict::ExactEqual);
        assert_eq!(r.anosov_class, AnosovClass::Generalized);
        assert_eq!((r.foliation_dim, r.fixed_point_count), (3, 30));
        assert_eq!(exact(&r.lhs_cohomology), FieldElement::rational(q(-15, 1)));
        assert_eq!(exact(&r.transverse_det), FieldElement::rational(q(2, 1)));
    }

    #[test]
    fn eigenvalue_one_is_refused() {
        let g = PolynomialGroup::abelian(2);
        let m = RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        // validation already refuses; build the pieces by hand to reach verify
        assert!(validate_endomorphism_map(&g, PolynomialMap::from_matrix(&m)).is_err());
    }
}

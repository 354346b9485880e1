//! Certified-interval evaluation when the foliation is not defined over a
//! single supported number field.

use crate::algebraic::{classify_unit_circle, CircleClass, ComplexInterval, Interval, RootEnclosure};
use crate::dynamics::FixedPoint;
use crate::exact::{Rational, RationalMatrix};
use crate::hyperbolic::AnosovClass;

use super::{FoliationChoice, LefschetzReport, ReportScalar, Verdict};

fn one() -> ComplexInterval {
    ComplexInterval::point(Rational::one(), Rational::zero())
}

/// `Π (1 - λ)^m` over the enclosures.
fn product(roots: &[RootEnclosure]) -> Interval {
    let mut acc = one();
    for r in roots {
        let factor = one().sub(&r.region.as_complex());
        for _ in 0..r.multiplicity {
            acc = acc.mul(&factor);
        }
    }
    acc.re
}

/// `Σ_k (-1)^k e_k(λ)`: the alternating trace of `Λ^k` of the restriction,
/// from the coefficients of `Π (1 + λ t)`.
fn alternating_elementary(roots: &[RootEnclosure]) -> Interval {
    let mut coeffs = vec![one()];
    for r in roots {
        let lam = r.region.as_complex();
        for _ in 0..r.multiplicity {
            let mut next = coeffs.clone();
            next.push(ComplexInterval::point(Rational::zero(), Rational::zero()));
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].add(&c.mul(&lam));
            }
            coeffs = next;
        }
    }
    let mut sum = ComplexInterval::point(Rational::zero(), Rational::zero());
    for (k, c) in coeffs.iter().enumerate() {
        sum = if k % 2 == 0 { sum.add(c) } else { sum.sub(c) };
    }
    sum.re
}

fn tolerance(iv: &Interval, precision: &Rational) -> Rational {
    let mag = iv.lo.abs().max(iv.hi.abs());
    precision * &mag.max(Rational::one())
}

pub(super) fn verify(
    fstar: &RationalMatrix,
    choice: &FoliationChoice,
    points: Vec<FixedPoint>,
    class: AnosovClass,
    precision: &Rational,
) -> LefschetzReport {
    let chi = fstar.char_poly().expect("square");
    let det_g = fstar.one_minus().and_then(|m| m.determinant()).expect("square");
    let target = match choice {
        FoliationChoice::Stable => CircleClass::Inside,
        _ => CircleClass::Outside,
    };
    let mut roots: Vec<RootEnclosure> =
        classify_unit_circle(&chi).enclosures.into_iter().filter(|e| e.circle_class == Some(target)).collect();
    let dim: usize = roots.iter().map(|r| r.multiplicity as usize).sum();

    let mut width = precision.clone();
    let (det_p, alt) = loop {
        for r in &mut roots {
            r.refine_to(&width);
        }
        let det_p = product(&roots);
        let alt = alternating_elementary(&roots);
        if det_p.sign().is_some()
            && det_p.width() <= tolerance(&det_p, precision)
            && alt.width() <= tolerance(&alt, precision)
        {
            break (det_p, alt);
        }
        width = width / Rational::from(4);
    };

    let sign = det_p.sign().expect("certified nonzero");
    let abs_g = det_g.abs();
    let transverse = Interval::point(abs_g.clone()).mul(&det_p.abs().recip().expect("nonzero"));
    let per_point = det_p.abs().scale(&(Rational::from(i64::from(sign)) / abs_g));
    let mut rhs = Interval::point(Rational::zero());
    for _ in &points {
        rhs = rhs.add(&per_point);
    }
    let consistent = alt.overlaps(&det_p) && det_p.overlaps(&rhs) && alt.overlaps(&rhs);
    let verdict = if consistent {
        Verdict::IntervalConsistent { width: alt.width().max(det_p.width()).max(rhs.width()) }
    } else {
        Verdict::Mismatch
    };
    LefschetzReport {
        foliation: choice.kind(),
        foliation_dim: dim,
        anosov_class: class,
        scalar_field: None,
        cohomology_traces: Vec::new(),
        lhs_cohomology: ReportScalar::Interval(alt),
        lhs_determinant: ReportScalar::Interval(det_p),
        rhs_fixed_point_sum: ReportScalar::Interval(rhs),
        det_one_minus_full: det_g,
        fixed_point_count: points.len(),
        fixed_points: points,
        local_sign: sign,
        transverse_det: ReportScalar::Interval(transverse),
        acceptability: None,
        verdict,
    }
}

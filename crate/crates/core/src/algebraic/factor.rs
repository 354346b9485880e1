//! Partial factorization over `Q`: rational roots, quadratic factors and an
//! irreducibility-tagged remainder. Enough to decide which eigenvalues can be
//! separated over a single real extension.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::interval::Interval;
use super::roots::{isolate_roots, Region, RootEnclosure};
use crate::exact::{Rational, UnivariatePolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FactorKind {
    Linear,
    Quadratic,
    /// Degree 3 to 5 with no linear or quadratic factor, hence irreducible.
    Irreducible,
    /// Degree 6 or more with no linear or quadratic factor; may still split.
    Unknown,
}

/// A monic factor of the input over `Q` and the power to which it divides it.
#[derive(Debug, Clone)]
pub struct RationalFactor {
    pub poly: UnivariatePolynomial,
    pub multiplicity: u32,
    pub kind: FactorKind,
}

impl RationalFactor {
    pub fn is_irreducible(&self) -> bool {
        self.kind != FactorKind::Unknown
    }
}

/// Monic integer polynomial `m(y) = a^n p(y / a)` for a monic rational
/// `p`, with `a` the common denominator. Roots scale by `a`.
fn to_monic_integer(p: &UnivariatePolynomial) -> (UnivariatePolynomial, Rational) {
    let p = p.monic();
    let a = Rational::from_integer(Rational::common_denominator(p.coeffs()));
    let m = p.scale_variable(&a.recip()).scale(&a.pow(p.deg() as u32));
    debug_assert!(m.has_integer_coefficients() && m.leading_coefficient().is_one());
    (m, a)
}

fn integers_in(iv: &Interval) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut n = iv.lo.ceil();
    while Rational::from_integer(n.clone()) <= iv.hi {
        out.push(n.clone());
        n += 1;
    }
    out
}

/// Integer roots of a monic integer polynomial, found from real enclosures.
fn integer_roots(m: &UnivariatePolynomial) -> Vec<BigInt> {
    let mut found = Vec::new();
    let sq = m.squarefree_part();
    if sq.is_constant() {
        return found;
    }
    for mut e in isolate_roots(&sq, &Rational::one()) {
        if !e.is_real() {
            continue;
        }
        e.refine_to(&Rational::new(1, 2));
        if let Region::Real(iv) = &e.region {
            for n in integers_in(iv) {
                if m.eval(&Rational::from_integer(n.clone())).is_zero() {
                    found.push(n);
                }
            }
        }
    }
    found
}

/// Monic integer quadratic factors of a squarefree monic integer polynomial
/// without integer roots, as `(s, p)` for `y^2 - s y + p`.
fn integer_quadratic_factor(m: &UnivariatePolynomial) -> Option<UnivariatePolynomial> {
    let roots = isolate_roots(m, &Rational::one());
    let n = roots.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&roots[i], &roots[j]);
            // A real quadratic factor has either two real roots or a
            // conjugate pair.
            let conjugate = match (&a.region, &b.region) {
                (Region::Real(_), Region::Real(_)) => false,
                (Region::Complex(x), Region::Complex(y)) => {
                    if !x.conj().overlaps(y) {
                        continue;
                    }
                    true
                }
                _ => continue,
            };
            if let Some(q) = quadratic_from_pair(m, a.clone(), b.clone(), conjugate) {
                return Some(q);
            }
        }
    }
    None
}

fn quadratic_from_pair(
    m: &UnivariatePolynomial,
    mut a: RootEnclosure,
    mut b: RootEnclosure,
    conjugate: bool,
) -> Option<UnivariatePolynomial> {
    let half = Rational::new(1, 2);
    loop {
        let (ra, rb) = (a.region.as_complex(), b.region.as_complex());
        let s = ra.add(&rb);
        let p = ra.mul(&rb);
        if s.re.width() < half && p.re.width() < half {
            let s_cands = integers_in(&s.re);
            let p_cands = integers_in(&p.re);
            if !conjugate && (s_cands.is_empty() || p_cands.is_empty()) {
                return None;
            }
            for s in &s_cands {
                for p in &p_cands {
                    let q = UnivariatePolynomial::new(vec![
                        Rational::from_integer(p.clone()),
                        Rational::from_integer(-s.clone()),
                        Rational::one(),
                    ]);
                    if m.rem(&q).is_zero() {
                        return Some(q);
                    }
                }
            }
            return None;
        }
        a.bisect();
        b.bisect();
    }
}

/// Splits `p` over `Q` into rational linear factors, quadratic factors and a
/// residual per multiplicity.
pub fn partial_factor(p: &UnivariatePolynomial) -> Vec<RationalFactor> {
    assert!(!p.is_constant(), "factoring a constant polynomial");
    let mut out = Vec::new();
    for (sq, k) in p.squarefree_decomposition() {
        let (mut m, a) = to_monic_integer(&sq);
        let back = |q: &UnivariatePolynomial| q.scale_variable(&a).monic();
        for r in integer_roots(&m) {
            let lin = UnivariatePolynomial::linear_root(&Rational::from_integer(r));
            m = m.exact_div(&lin).expect("verified integer root");
            out.push(RationalFactor { poly: back(&lin), multiplicity: k, kind: FactorKind::Linear });
        }
        while m.deg() >= 4 {
            match integer_quadratic_factor(&m) {
                Some(q) => {
                    m = m.exact_div(&q).expect("verified quadratic factor");
                    out.push(RationalFactor { poly: back(&q), multiplicity: k, kind: FactorKind::Quadratic });
                }
                None => break,
            }
        }
        let kind = match m.deg() {
            0 => continue,
            2 => FactorKind::Quadratic,
            3..=5 => FactorKind::Irreducible,
            _ => FactorKind::Unknown,
        };
        out.push(RationalFactor { poly: back(&m), multiplicity: k, kind });
    }
    out
}

/// Squarefree part of an integer: `n = k^2 d` with `d` squarefree. Returns
/// `(k, d)`; trial division is fine for the discriminants seen here.
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "zero has no squarefree part");
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        let ff = &f * &f;
        while (&rest % &ff).is_zero() {
            rest /= &ff;
            k *= &f;
        }
        f += 1;
    }
    (k, sign * rest)
}

//! Exact classification of polynomial roots against the unit circle.
//!
//! Roots on the circle are counted algebraically: they are common roots of
//! `p` and its reversal, and after removing `x ± 1` the self-reciprocal part
//! `g(x) = x^m h(x + 1/x)` has circle roots exactly over the real roots of
//! `h` in `(-2, 2)`. Inside/outside counts come from the Cayley transform
//! `x = (1 + w)/(1 - w)` and a Cauchy index along the imaginary axis.

use serde::Serialize;

use super::roots::{isolate_roots, CircleClass, Region, RootEnclosure};
use super::sturm::{cauchy_index_real_line, SturmChain};
use crate::exact::{Rational, UnivariatePolynomial};

#[derive(Debug, Clone, Serialize)]
pub struct UnitCircleClassification {
    pub inside: usize,
    pub on: usize,
    pub outside: usize,
    pub enclosures: Vec<RootEnclosure>,
}

/// Refinement budget per enclosure per round when separating roots from the circle.
const CLASSIFY_ROUND: usize = 8;

/// Distinct roots of a squarefree polynomial lying on the unit circle.
pub fn count_on_circle_squarefree(sq: &UnivariatePolynomial) -> usize {
    if sq.is_constant() {
        return 0;
    }
    let one = Rational::one();
    let mut on = 0;
    let mut g = sq.gcd(&sq.reverse());
    for r in [one.clone(), -&one] {
        if let Some(q) = g.exact_div(&UnivariatePolynomial::linear_root(&r)) {
            on += 1;
            g = q;
        }
    }
    if g.is_constant() {
        return on;
    }
    let h = palindromic_to_trace_poly(&g);
    let two = Rational::from(2);
    on + 2 * SturmChain::new(&h).count_open(&-&two, &two)
}

/// For a palindromic `g` of degree `2m`, the polynomial `h` of degree `m`
/// with `g(x) = x^m h(x + 1/x)`.
pub fn palindromic_to_trace_poly(g: &UnivariatePolynomial) -> UnivariatePolynomial {
    let d = g.deg();
    assert!(d.is_multiple_of(2), "self-reciprocal factor must have even degree");
    let m = d / 2;
    // x^k + x^-k = D_k(y) with D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}
    let y = UnivariatePolynomial::x();
    let mut dk = vec![UnivariatePolynomial::from_i64(&[2]), y.clone()];
    for k in 2..=m {
        let next = &(&y * &dk[k - 1]) - &dk[k - 2];
        dk.push(next);
    }
    let mut h = UnivariatePolynomial::constant(g.coeff(m));
    for (k, dpoly) in dk.iter().enumerate().take(m + 1).skip(1) {
        h = &h + &dpoly.scale(&g.coeff(m + k));
    }
    h
}

/// `n_L - n_R` for the Cayley transform of `p`: the difference between
/// roots inside and outside the unit circle.
fn inside_minus_outside(p: &UnivariatePolynomial) -> i64 {
    let n = p.deg();
    // S(i tau) = sum a_k (1 + i tau)^k (1 - i tau)^(n-k) = A + i B
    let plus = (UnivariatePolynomial::one(), UnivariatePolynomial::x());
    let minus = (UnivariatePolynomial::one(), -&UnivariatePolynomial::x());
    let cmul = |a: &(UnivariatePolynomial, UnivariatePolynomial), b: &(UnivariatePolynomial, UnivariatePolynomial)| {
        (&(&a.0 * &b.0) - &(&a.1 * &b.1), &(&a.0 * &b.1) + &(&a.1 * &b.0))
    };
    let mut plus_pows = vec![(UnivariatePolynomial::one(), UnivariatePolynomial::zero())];
    let mut minus_pows = plus_pows.clone();
    for k in 1..=n {
        plus_pows.push(cmul(&plus_pows[k - 1], &plus));
        minus_pows.push(cmul(&minus_pows[k - 1], &minus));
    }
    let mut a = UnivariatePolynomial::zero();
    let mut b = UnivariatePolynomial::zero();
    for k in 0..=n {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let term = cmul(&plus_pows[k], &minus_pows[n - k]);
        a = &a + &term.0.scale(&c);
        b = &b + &term.1.scale(&c);
    }
    if a.is_zero() && b.is_zero() {
        return 0;
    }
    // The argument of A + iB advances by pi (n_L - n_R); read it off the
    // Cauchy index on whichever grid the endpoints avoid.
    if b.deg() >= a.deg() && !b.is_zero() {
        cauchy_index_real_line(&a, &b)
    } else {
        cauchy_index_real_line(&-&b, &a)
    }
}

/// Counts (with multiplicity) of roots inside, on, and outside the unit
/// circle, purely algebraically.
pub fn unit_circle_counts(p: &UnivariatePolynomial) -> (usize, usize, usize) {
    assert!(!p.is_zero(), "classification of the zero polynomial");
    let (mut inside, mut on, mut outside) = (0, 0, 0);
    for (sq, k) in p.squarefree_decomposition() {
        let k = k as usize;
        let n = sq.deg() as i64;
        let o = count_on_circle_squarefree(&sq) as i64;
        let diff = inside_minus_outside(&sq);
        assert!((n - o + diff) % 2 == 0 && (n - o - diff) >= 0, "inconsistent circle counts");
        inside += k * ((n - o + diff) / 2) as usize;
        outside += k * ((n - o - diff) / 2) as usize;
        on += k * o as usize;
    }
    (inside, on, outside)
}

/// Classifies every root of `p` against the unit circle and returns certified
/// enclosures labelled with their class.
pub fn classify_unit_circle(p: &UnivariatePolynomial) -> UnitCircleClassification {
    let (inside, on, outside) = unit_circle_counts(p);
    let mut enclosures = isolate_roots(p, &Rational::one());
    // Real roots meet the circle only at ±1, which is decided exactly; the
    // rest separate from it by bisection alone.
    let one = Rational::one();
    let mut real_on = 0usize;
    for e in enclosures.iter_mut().filter(|e| e.is_real()) {
        let Region::Real(iv) = &e.region else { unreachable!() };
        let at_unit = [one.clone(), -&one].into_iter().any(|u| iv.contains(&u) && e.squarefree().eval(&u).is_zero());
        if at_unit {
            e.circle_class = Some(CircleClass::On);
            real_on += e.multiplicity as usize;
        } else {
            while e.circle_class.is_none() {
                e.circle_class = e.try_certify_class(CLASSIFY_ROUND);
            }
        }
    }
    loop {
        let pending: usize =
            enclosures.iter().filter(|e| e.circle_class.is_none()).map(|e| e.multiplicity as usize).sum();
        if pending + real_on == on {
            break;
        }
        let mut unresolved = real_on;
        for e in enclosures.iter_mut().filter(|e| e.circle_class.is_none()) {
            match e.try_certify_class(CLASSIFY_ROUND) {
                Some(c) => e.circle_class = Some(c),
                None => unresolved += e.multiplicity as usize,
            }
        }
        if unresolved == on {
            break;
        }
        assert!(unresolved > on, "more roots certified off the circle than exist");
    }
    for e in enclosures.iter_mut().filter(|e| e.circle_class.is_none()) {
        e.circle_class = Some(CircleClass::On);
    }
    let tally = |c: CircleClass| {
        enclosures.iter().filter(|e| e.circle_class == Some(c)).map(|e| e.multiplicity as usize).sum::<usize>()
    };
    assert_eq!(
        (tally(CircleClass::Inside), tally(CircleClass::Outside)),
        (inside, outside),
        "enclosure refinement disagrees with algebraic counts"
    );
    UnitCircleClassification { inside, on, outside, enclosures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64(c)
    }

    fn counts(f: &UnivariatePolynomial) -> (usize, usize, usize) {
        let c = classify_unit_circle(f);
        (c.inside, c.on, c.outside)
    }

    #[test]
    fn heisenberg_char_poly() {
        // (x^2 - 2x - 1)(x + 1)
        let f = &p(&[-1, -2, 1]) * &p(&[1, 1]);
        assert_eq!(counts(&f), (1, 1, 1));
    }

    #[test]
    fn cat_map() {
        assert_eq!(counts(&p(&[1, -3, 1])), (1, 0, 1));
    }

    #[test]
    fn linear_at_one() {
        assert_eq!(counts(&p(&[-1, 1])), (0, 1, 0));
    }

    #[test]
    fn cyclotomic_factors() {
        // Phi_5 = x^4 + x^3 + x^2 + x + 1, all on the circle
        assert_eq!(counts(&p(&[1, 1, 1, 1, 1])), (0, 4, 0));
        // (x^2 + 1)^2 (2x - 1)(x - 3)
        let f = &(&p(&[1, 0, 1]).pow(2) * &p(&[-1, 2])) * &p(&[-3, 1]);
        assert_eq!(counts(&f), (1, 4, 1));
    }

    #[test]
    fn root_extremely_close_to_circle() {
        // root at 1 + 10^-50 and its partner
        let eps = Rational::new(1, num_bigint::BigInt::from(10).pow(50));
        let r = &Rational::one() + &eps;
        let f = &UnivariatePolynomial::linear_root(&r) * &p(&[1, 1, 1]);
        assert_eq!(counts(&f), (0, 2, 1));
        let r = &Rational::one() - &eps;
        assert_eq!(counts(&UnivariatePolynomial::linear_root(&r)), (1, 0, 0));
    }

    #[test]
    fn zero_root_counts_inside() {
        assert_eq!(counts(&p(&[0, 0, 1, 1])), (2, 1, 0));
    }

    #[test]
    fn trace_poly_of_phi5() {
        // x^4 + x^3 + x^2 + x + 1 = x^2 (y^2 + y - 1)
        assert_eq!(palindromic_to_trace_poly(&p(&[1, 1, 1, 1, 1])), p(&[-1, 1, 1]));
    }
}

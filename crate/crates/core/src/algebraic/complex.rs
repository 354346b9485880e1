//! Exact root counting in axis-aligned rectangles via the argument principle.
//!
//! Along each edge `z(t) = a + t b`, `t ∈ [0, 1]`, the value `p(z(t))` splits
//! into real polynomials `R(t) + i I(t)`. For a counter-clockwise boundary
//! free of roots, the number of enclosed roots is half the summed Cauchy
//! index of `R/I` over the four edges, provided `I` is nonzero at the corners.
//! The corner condition is met by rotating `p` by a rational unit `1 + k i`.

use super::interval::{ComplexInterval, Interval};
use super::sturm::{cauchy_index, SturmChain};
use crate::exact::{Rational, UnivariatePolynomial};

/// Polynomial in a real parameter with Gaussian-rational coefficients.
#[derive(Debug, Clone)]
struct ComplexPoly {
    re: UnivariatePolynomial,
    im: UnivariatePolynomial,
}

impl ComplexPoly {
    fn constant(re: Rational, im: Rational) -> Self {
        ComplexPoly { re: UnivariatePolynomial::constant(re), im: UnivariatePolynomial::constant(im) }
    }

    fn linear(a: (Rational, Rational), b: (Rational, Rational)) -> Self {
        ComplexPoly { re: UnivariatePolynomial::new(vec![a.0, b.0]), im: UnivariatePolynomial::new(vec![a.1, b.1]) }
    }

    fn mul(&self, o: &Self) -> Self {
        ComplexPoly { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }

    fn add_constant(&self, c: &Rational) -> Self {
        ComplexPoly { re: &self.re + &UnivariatePolynomial::constant(c.clone()), im: self.im.clone() }
    }
}

/// `p(a + t b)` as real and imaginary parts in `t`.
fn substitute_line(
    p: &UnivariatePolynomial,
    a: (Rational, Rational),
    b: (Rational, Rational),
) -> (UnivariatePolynomial, UnivariatePolynomial) {
    let z = ComplexPoly::linear(a, b);
    let mut acc = ComplexPoly::constant(Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&z).add_constant(c);
    }
    (acc.re, acc.im)
}

/// Exact complex value `p(x + i y)`.
pub fn eval_complex(p: &UnivariatePolynomial, x: &Rational, y: &Rational) -> (Rational, Rational) {
    let (mut re, mut im) = (Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        let nre = &(&re * x) - &(&im * y) + c;
        let nim = &(&re * y) + &(&im * x);
        re = nre;
        im = nim;
    }
    (re, im)
}

/// Whether `p` vanishes somewhere on the closed segment `a + t b`, `t ∈ [0, 1]`.
pub(crate) fn segment_has_root(p: &UnivariatePolynomial, a: (Rational, Rational), b: (Rational, Rational)) -> bool {
    let (re, im) = substitute_line(p, a, b);
    let g = re.gcd(&im);
    !g.is_constant() && SturmChain::new(&g.squarefree_part()).count_closed(&Rational::zero(), &Rational::one()) > 0
}

/// Number of roots (with multiplicity) of `p` strictly inside `rect`, or
/// `None` when a root lies on the boundary.
pub fn count_in_rectangle(p: &UnivariatePolynomial, rect: &ComplexInterval) -> Option<usize> {
    let (x0, x1) = (&rect.re.lo, &rect.re.hi);
    let (y0, y1) = (&rect.im.lo, &rect.im.hi);
    assert!(x0 < x1 && y0 < y1, "degenerate rectangle");
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let values: Vec<(Rational, Rational)> = corners.iter().map(|(x, y)| eval_complex(p, x, y)).collect();
    if values.iter().any(|(r, i)| r.is_zero() && i.is_zero()) {
        return None;
    }

    let zero = Rational::zero;
    let dx = x1 - x0;
    let dy = y1 - y0;
    let edges = [
        ((x0.clone(), y0.clone()), (dx.clone(), zero())),
        ((x1.clone(), y0.clone()), (zero(), dy.clone())),
        ((x1.clone(), y1.clone()), (-&dx, zero())),
        ((x0.clone(), y1.clone()), (zero(), -&dy)),
    ];
    let (t0, t1) = (Rational::zero(), Rational::one());
    let mut parts = Vec::with_capacity(4);
    for (a, b) in edges {
        let (re, im) = substitute_line(p, a, b);
        let g = re.gcd(&im);
        if !g.is_constant() && SturmChain::new(&g.squarefree_part()).count_closed(&t0, &t1) > 0 {
            return None;
        }
        parts.push((re, im));
    }

    // Rotate by (1 + k i) until no corner has a vanishing imaginary part.
    let k = (0i64..).map(Rational::from).find(|k| values.iter().all(|(r, i)| !(&(k * r) + i).is_zero())).unwrap();
    let mut index = 0i64;
    for (re, im) in &parts {
        let rot_re = re - &im.scale(&k);
        let rot_im = &re.scale(&k) + im;
        index += cauchy_index(&rot_re, &rot_im, &t0, &t1);
    }
    assert!(index >= 0 && index % 2 == 0, "winding computation produced odd index {index}");
    Some((index / 2) as usize)
}

/// Splits `[lo, hi]` near its midpoint, nudging the cut when `reject` fires.
pub(crate) fn split_point(iv: &Interval, mut reject: impl FnMut(&Rational) -> bool) -> Rational {
    let w = iv.width();
    for k in 0..64i64 {
        // midpoint, then small offsets alternating sides
        let off = &w * &Rational::new(k, 2 * 64 + 3);
        let candidates = [&iv.midpoint() + &off, &iv.midpoint() - &off];
        for c in candidates {
            if c > iv.lo && c < iv.hi && !reject(&c) {
                return c;
            }
        }
    }
    panic!("no admissible split point in {iv:?}");
}

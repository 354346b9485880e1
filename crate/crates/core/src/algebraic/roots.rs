use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::complex::{count_in_rectangle, segment_has_root, split_point};
use super::interval::{ComplexInterval, Interval};
use super::numeric::{approximate_roots, dyadic};
use super::sturm::SturmChain;
use crate::exact::{Rational, UnivariatePolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CircleClass {
    Inside,
    On,
    Outside,
}

/// Where a root lives: a rational interval on the real line or a rectangle
/// strictly above or below it.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Real(Interval),
    Complex(ComplexInterval),
}

impl Region {
    pub fn as_complex(&self) -> ComplexInterval {
        match self {
            Region::Real(iv) => ComplexInterval::real(iv.clone()),
            Region::Complex(r) => r.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Region::Real(_))
    }

    pub fn width(&self) -> Rational {
        match self {
            Region::Real(iv) => iv.width(),
            Region::Complex(r) => r.width(),
        }
    }

    pub fn overlaps(&self, other: &Region) -> bool {
        self.as_complex().overlaps(&other.as_complex())
    }

    /// Classification that the region alone certifies (never `On`).
    pub fn certified_class(&self) -> Option<CircleClass> {
        let n = self.as_complex().norm_sqr();
        if n.hi < Rational::one() {
            Some(CircleClass::Inside)
        } else if n.lo > Rational::one() {
            Some(CircleClass::Outside)
        } else {
            None
        }
    }

    /// Midpoint approximation, for display and numeric cross-checks.
    pub fn approx(&self) -> (f64, f64) {
        let c = self.as_complex();
        (c.re.midpoint().to_f64(), c.im.midpoint().to_f64())
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Real(iv) => write!(f, "Real{iv:?}"),
            Region::Complex(r) => write!(f, "Complex({r:?})"),
        }
    }
}

/// Certified enclosure of one distinct root of a polynomial.
///
/// The region contains exactly one distinct root of `squarefree`, which is a
/// root of the owning polynomial with the stated multiplicity.
#[derive(Clone, Serialize)]
pub struct RootEnclosure {
    pub region: Region,
    pub multiplicity: u32,
    pub circle_class: Option<CircleClass>,
    #[serde(skip)]
    squarefree: Arc<UnivariatePolynomial>,
}

impl fmt::Debug for RootEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootEnclosure")
            .field("region", &self.region)
            .field("multiplicity", &self.multiplicity)
            .field("circle_class", &self.circle_class)
            .finish()
    }
}

impl RootEnclosure {
    /// Squarefree polynomial with a simple root in the region.
    pub fn squarefree(&self) -> &UnivariatePolynomial {
        &self.squarefree
    }

    pub fn is_real(&self) -> bool {
        self.region.is_real()
    }

    /// Exact rational value if the region has collapsed to a point.
    pub fn exact_value(&self) -> Option<Rational> {
        match &self.region {
            Region::Real(iv) if iv.is_point() => Some(iv.lo.clone()),
            _ => None,
        }
    }

    /// Halves the region once, keeping the root.
    pub fn bisect(&mut self) {
        let p = self.squarefree.clone();
        self.region = match &self.region {
            Region::Real(iv) => Region::Real(bisect_real(&p, iv)),
            Region::Complex(r) => Region::Complex(bisect_complex(&p, r)),
        };
    }

    /// Refines until the region is no wider than `width`.
    pub fn refine_to(&mut self, width: &Rational) {
        while &self.region.width() > width {
            self.bisect();
        }
    }

    /// Refines until the region certifies inside/outside the unit circle.
    /// Loops forever for roots on the circle, so callers bound the budget.
    pub fn try_certify_class(&mut self, max_steps: usize) -> Option<CircleClass> {
        for _ in 0..max_steps {
            if let Some(c) = self.region.certified_class() {
                return Some(c);
            }
            self.bisect();
        }
        self.region.certified_class()
    }
}

fn bisect_real(p: &UnivariatePolynomial, iv: &Interval) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let m = iv.midpoint();
    let sm = p.sign_at(&m);
    if sm == 0 {
        return Interval::point(m);
    }
    // Non-point regions never have a root at an endpoint.
    if p.sign_at(&iv.hi) != sm {
        Interval::new(m, iv.hi.clone())
    } else {
        Interval::new(iv.lo.clone(), m)
    }
}

fn bisect_complex(p: &UnivariatePolynomial, r: &ComplexInterval) -> ComplexInterval {
    let mut children = quadrisect(p, r);
    let last = children.pop().expect("four children");
    for child in children {
        if count_in_rectangle(p, &child) == Some(1) {
            return child;
        }
    }
    // The parent holds exactly one root and the other three children none.
    last
}

/// Four sub-rectangles whose boundaries avoid roots of `p`.
fn quadrisect(p: &UnivariatePolynomial, r: &ComplexInterval) -> Vec<ComplexInterval> {
    // Cut lines are chosen so that each child's boundary is root-free; a
    // vertical line x = c is rejected when the strip boundary hits a root.
    let zero = Rational::zero;
    let cx = split_point(&r.re, |c| segment_has_root(p, (c.clone(), r.im.lo.clone()), (zero(), r.im.width())));
    let cy = split_point(&r.im, |c| segment_has_root(p, (r.re.lo.clone(), c.clone()), (r.re.width(), zero())));
    let xs = [(r.re.lo.clone(), cx.clone()), (cx.clone(), r.re.hi.clone())];
    let ys = [(r.im.lo.clone(), cy.clone()), (cy.clone(), r.im.hi.clone())];
    let mut out = Vec::with_capacity(4);
    for (ylo, yhi) in &ys {
        for (xlo, xhi) in &xs {
            out.push(ComplexInterval {
                re: Interval::new(xlo.clone(), xhi.clone()),
                im: Interval::new(ylo.clone(), yhi.clone()),
            });
        }
    }
    out
}

/// Isolates the distinct real roots of a squarefree polynomial.
pub(crate) fn isolate_real_squarefree(p: &UnivariatePolynomial) -> Vec<Interval> {
    if p.is_constant() {
        return Vec::new();
    }
    let sturm = SturmChain::new(p);
    let b = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![Interval::new(-&b, b)];
    while let Some(iv) = stack.pop() {
        let n = sturm.count_half_open(&iv.lo, &iv.hi);
        match n {
            0 => {}
            1 if p.eval(&iv.lo).is_zero() && !p.eval(&iv.hi).is_zero() => {
                let m = iv.midpoint();
                stack.push(Interval::new(m.clone(), iv.hi.clone()));
                stack.push(Interval::new(iv.lo.clone(), m));
            }
            1 => {
                if p.eval(&iv.hi).is_zero() {
                    out.push(Interval::point(iv.hi.clone()));
                } else {
                    out.push(iv);
                }
            }
            _ => {
                let m = iv.midpoint();
                stack.push(Interval::new(m.clone(), iv.hi.clone()));
                stack.push(Interval::new(iv.lo.clone(), m));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Isolates the non-real roots of a squarefree polynomial as rectangles
/// (upper half-plane ones first found, then mirrored).
fn isolate_nonreal_squarefree(p: &UnivariatePolynomial, real_count: usize) -> Vec<ComplexInterval> {
    let nonreal = p.deg() - real_count;
    if nonreal == 0 {
        return Vec::new();
    }
    let upper = nonreal / 2;
    let done = seeded_upper_boxes(p, upper).unwrap_or_else(|| quadtree_upper_boxes(p, upper));
    let mut out = done.clone();
    out.extend(done.iter().map(|r| r.conj_rect()));
    out
}

/// Upper half-plane roots by subdividing a box that holds all of them.
fn quadtree_upper_boxes(p: &UnivariatePolynomial, upper: usize) -> Vec<ComplexInterval> {
    let b = p.root_bound();
    // Lower the floor of the search box until it holds every upper root.
    let mut floor = &b / &Rational::from(2);
    let start = loop {
        let r = ComplexInterval { re: Interval::new(-&b, b.clone()), im: Interval::new(floor.clone(), b.clone()) };
        match count_in_rectangle(p, &r) {
            Some(n) if n == upper => break r,
            Some(n) => assert!(n < upper, "rectangle count exceeds upper-half total"),
            None => {}
        }
        floor = &floor * &Rational::new(3, 7);
    };
    let mut done = Vec::new();
    let mut work = vec![(start, upper)];
    while let Some((r, n)) = work.pop() {
        if n == 1 {
            done.push(r);
            continue;
        }
        let children = quadrisect(p, &r);
        let mut total = 0;
        for c in children {
            let k = count_in_rectangle(p, &c).expect("quadrisect guarantees root-free boundaries");
            total += k;
            if k > 0 {
                work.push((c, k));
            }
        }
        assert_eq!(total, n, "child counts do not add up");
    }
    done.sort_by(|a, b| a.re.lo.cmp(&b.re.lo).then(a.im.lo.cmp(&b.im.lo)));
    done
}

/// Squares around floating-point approximations of the upper half-plane
/// roots, each certified by an exact count. Returns `None` unless the squares
/// are disjoint, hold one root each and account for all `upper` roots.
fn seeded_upper_boxes(p: &UnivariatePolynomial, upper: usize) -> Option<Vec<ComplexInterval>> {
    let approx = approximate_roots(p)?;
    let mut seeds: Vec<Complex64> = approx.iter().copied().filter(|z| z.im > 0.0).collect();
    seeds.sort_by(|a, b| b.im.total_cmp(&a.im));
    seeds.truncate(upper);
    if seeds.len() != upper {
        return None;
    }
    let mut boxes = Vec::with_capacity(upper);
    for z in &seeds {
        let nearest = approx.iter().filter(|w| *w != z).map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
        let mut h = (0.3 * nearest).min(0.5 * z.im);
        let circle_gap = (z.norm() - 1.0).abs();
        if circle_gap > 1e-9 {
            h = h.min(0.3 * circle_gap);
        }
        if h.is_nan() || h <= 1e-12 * (1.0 + z.norm()) {
            return None;
        }
        let bits = (-h.log2()).ceil() as i32 + 3;
        let (re, im) = (dyadic(z.re, bits), dyadic(z.im, bits));
        let hh = dyadic(h, bits);
        let rect = ComplexInterval { re: Interval::new(&re - &hh, &re + &hh), im: Interval::new(&im - &hh, &im + &hh) };
        if !rect.im.lo.is_positive() || count_in_rectangle(p, &rect) != Some(1) {
            return None;
        }
        if boxes.iter().any(|b: &ComplexInterval| b.overlaps(&rect)) {
            return None;
        }
        boxes.push(rect);
    }
    Some(boxes)
}

impl ComplexInterval {
    fn conj_rect(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.clone(), im: self.im.neg() }
    }
}

/// Certified isolation of all roots of `p` with multiplicities. Every region
/// is refined to width at most `precision`; regions are pairwise disjoint.
pub fn isolate_roots(p: &UnivariatePolynomial, precision: &Rational) -> Vec<RootEnclosure> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    let mut out: Vec<RootEnclosure> = Vec::new();
    for (factor, k) in p.squarefree_decomposition() {
        let sq = Arc::new(factor);
        let reals = isolate_real_squarefree(&sq);
        let complex = isolate_nonreal_squarefree(&sq, reals.len());
        for iv in reals {
            out.push(RootEnclosure {
                region: Region::Real(iv),
                multiplicity: k,
                circle_class: None,
                squarefree: sq.clone(),
            });
        }
        for r in complex {
            out.push(RootEnclosure {
                region: Region::Complex(r),
                multiplicity: k,
                circle_class: None,
                squarefree: sq.clone(),
            });
        }
    }
    for e in out.iter_mut() {
        e.refine_to(precision);
    }
    // Roots of different squarefree factors are distinct; refine until apart.
    loop {
        let clash = (0..out.len())
            .flat_map(|i| (i + 1..out.len()).map(move |j| (i, j)))
            .find(|&(i, j)| out[i].region.overlaps(&out[j].region));
        match clash {
            Some((i, j)) => {
                out[i].bisect();
                out[j].bisect();
            }
            None => break,
        }
    }
    out.sort_by(|a, b| {
        let (ax, ay) = a.region.approx();
        let (bx, by) = b.region.approx();
        ax.total_cmp(&bx).then(ay.total_cmp(&by))
    });
    out
}

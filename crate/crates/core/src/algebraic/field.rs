use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::interval::Interval;
use super::roots::isolate_real_squarefree;
use super::sturm::SturmChain;
use super::AlgebraicError;
use crate::exact::{Rational, Scalar, UnivariatePolynomial};

/// A real number field `Q(α)`, with `α` pinned down as the unique real root
/// of `min_poly` inside `isolating_interval`.
#[derive(Clone, Serialize)]
pub struct RealAlgebraicField {
    min_poly: UnivariatePolynomial,
    isolating_interval: Interval,
    /// Position of α among the real roots of `min_poly`, ascending.
    #[serde(skip)]
    root_index: usize,
    #[serde(skip)]
    symbol: String,
    /// Tightest interval for α found so far, shared by all elements.
    #[serde(skip)]
    refined: Arc<Mutex<Interval>>,
}

impl fmt::Debug for RealAlgebraicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({}), {} a root of {} in {:?}", self.symbol, self.symbol, self.min_poly, self.isolating_interval)
    }
}

impl PartialEq for RealAlgebraicField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly && self.root_index == other.root_index
    }
}

impl Eq for RealAlgebraicField {}

impl RealAlgebraicField {
    /// Builds `Q(α)`. `min_poly` must be monic with integer coefficients and
    /// the interval must isolate exactly one real root. Irreducibility is
    /// checked for degree at most 3; above that the caller vouches for it via
    /// `assume_irreducible`.
    pub fn new(
        min_poly: UnivariatePolynomial,
        isolating_interval: Interval,
        assume_irreducible: bool,
    ) -> Result<Arc<Self>, AlgebraicError> {
        let d = min_poly.degree().ok_or(AlgebraicError::NotMonicInteger)?;
        if d == 0 || !min_poly.leading_coefficient().is_one() || !min_poly.has_integer_coefficients() {
            return Err(AlgebraicError::NotMonicInteger);
        }
        if !min_poly.is_squarefree() {
            return Err(AlgebraicError::Reducible);
        }
        let sturm = SturmChain::new(&min_poly);
        let iv = &isolating_interval;
        if sturm.count_closed(&iv.lo, &iv.hi) != 1 {
            return Err(AlgebraicError::NotIsolating);
        }
        if d <= 3 {
            if d > 1 && has_integer_root(&min_poly) {
                return Err(AlgebraicError::Reducible);
            }
        } else if !assume_irreducible {
            return Err(AlgebraicError::IrreducibilityUnverified(d));
        }
        let below = -min_poly.root_bound() - Rational::one();
        let root_index = sturm.count_closed(&below, &iv.hi) - 1;
        Ok(Arc::new(RealAlgebraicField {
            min_poly,
            isolating_interval: isolating_interval.clone(),
            root_index,
            symbol: "α".into(),
            refined: Arc::new(Mutex::new(isolating_interval.clone())),
        }))
    }

    /// `Q(√d)` for a positive non-square integer `d`, with `α = +√d`.
    pub fn sqrt(d: &BigInt) -> Result<Arc<Self>, AlgebraicError> {
        if !d.is_positive() || d.sqrt().pow(2) == *d {
            return Err(AlgebraicError::Reducible);
        }
        let min_poly =
            UnivariatePolynomial::new(vec![Rational::from_integer(-d.clone()), Rational::zero(), Rational::one()]);
        let s = d.sqrt();
        let iv = Interval::new(Rational::from_integer(s.clone()), Rational::from_integer(s + 1));
        let mut field = Arc::try_unwrap(Self::new(min_poly, iv, false)?).unwrap();
        field.symbol = format!("√{d}");
        Ok(Arc::new(field))
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    pub fn min_poly(&self) -> &UnivariatePolynomial {
        &self.min_poly
    }

    pub fn isolating_interval(&self) -> &Interval {
        &self.isolating_interval
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            symbol: self.symbol.clone(),
            min_poly: self.min_poly.clone(),
            interval: [self.isolating_interval.lo.clone(), self.isolating_interval.hi.clone()],
        }
    }

    /// The generator α as an element.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        if self.degree() == 1 {
            coords[0] = -self.min_poly.coeff(0);
        } else {
            coords[1] = Rational::one();
        }
        FieldElement { field: Some(self.clone()), coords }
    }

    /// Embeds a polynomial expression in α.
    pub fn element(self: &Arc<Self>, poly: &UnivariatePolynomial) -> FieldElement {
        FieldElement::reduce(Some(self.clone()), poly)
    }

    /// α's isolating interval refined to width at most `width`.
    pub fn refined_interval(&self, width: &Rational) -> Interval {
        let mut iv = self.best_interval();
        while &iv.width() > width {
            iv = self.bisect(&iv);
        }
        iv
    }

    fn best_interval(&self) -> Interval {
        self.refined.lock().expect("interval cache poisoned").clone()
    }

    /// Halves an interval around α. The defining polynomial is squarefree, so
    /// α is a simple root and a sign change locates it.
    fn bisect(&self, iv: &Interval) -> Interval {
        if iv.is_point() {
            return iv.clone();
        }
        let p = &self.min_poly;
        let (s_lo, m) = (p.sign_at(&iv.lo), iv.midpoint());
        let s_m = p.sign_at(&m);
        let next = if s_lo == 0 {
            Interval::point(iv.lo.clone())
        } else if s_m == 0 {
            Interval::point(m)
        } else if s_lo != s_m {
            Interval::new(iv.lo.clone(), m)
        } else {
            Interval::new(m, iv.hi.clone())
        };
        let mut best = self.refined.lock().expect("interval cache poisoned");
        if next.width() < best.width() {
            *best = next.clone();
        }
        next
    }
}

fn has_integer_root(p: &UnivariatePolynomial) -> bool {
    isolate_real_squarefree(&p.squarefree_part()).into_iter().any(|iv| {
        let mut n = iv.lo.ceil();
        while Rational::from_integer(n.clone()) <= iv.hi {
            if p.eval(&Rational::from_integer(n.clone())).is_zero() {
                return true;
            }
            n += 1;
        }
        false
    })
}

/// Element of `Q(α)` in the power basis `1, α, ..., α^{d-1}`.
///
/// A `None` field means the element is a plain rational and embeds into any
/// field; arithmetic promotes it on contact.
#[derive(Clone)]
pub struct FieldElement {
    field: Option<Arc<RealAlgebraicField>>,
    coords: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn rational(q: Rational) -> Self {
        FieldElement { field: None, coords: vec![q] }
    }

    pub fn from_coords(field: Arc<RealAlgebraicField>, coords: Vec<Rational>) -> Self {
        FieldElement::reduce(Some(field), &UnivariatePolynomial::new(coords))
    }

    fn reduce(field: Option<Arc<RealAlgebraicField>>, poly: &UnivariatePolynomial) -> Self {
        match field {
            None => {
                assert!(poly.deg() == 0, "non-constant polynomial without a field");
                FieldElement { field: None, coords: vec![poly.coeff(0)] }
            }
            Some(f) => {
                let r = poly.rem(f.min_poly());
                let coords = (0..f.degree()).map(|i| r.coeff(i)).collect();
                FieldElement { field: Some(f), coords }
            }
        }
    }

    pub fn field(&self) -> Option<&Arc<RealAlgebraicField>> {
        self.field.as_ref()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn poly(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coords.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(Rational::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    fn common_field(&self, other: &Self) -> Result<Option<Arc<RealAlgebraicField>>, AlgebraicError> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) if a != b => {
                if self.is_rational() || other.is_rational() {
                    Ok(Some(if self.is_rational() { b.clone() } else { a.clone() }))
                } else {
                    Err(AlgebraicError::FieldMismatch)
                }
            }
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    fn lift(&self, field: &Option<Arc<RealAlgebraicField>>) -> UnivariatePolynomial {
        if field.is_some() && self.field.as_ref() != field.as_ref() {
            // Rational element entering a field.
            UnivariatePolynomial::constant(self.coords[0].clone())
        } else {
            self.poly()
        }
    }

    pub fn try_inverse(&self) -> Result<Self, AlgebraicError> {
        if self.is_zero_exact() {
            return Err(AlgebraicError::DivisionByZero);
        }
        match &self.field {
            None => Ok(FieldElement::rational(self.coords[0].recip())),
            Some(f) => {
                let (g, s, _) = self.poly().extended_gcd(f.min_poly());
                if !g.is_constant() {
                    return Err(AlgebraicError::Reducible);
                }
                Ok(FieldElement::reduce(Some(f.clone()), &s))
            }
        }
    }

    fn is_zero_exact(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// Evaluates the element over an interval for α.
    fn eval_interval(&self, alpha: &Interval) -> Interval {
        self.coords
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| acc.mul(alpha).add(&Interval::point(c.clone())))
    }

    /// Interval containing the real value, no wider than `width`.
    pub fn to_interval(&self, width: &Rational) -> Interval {
        assert!(width.is_positive(), "interval width must be positive");
        let Some(f) = &self.field else {
            return Interval::point(self.coords[0].clone());
        };
        if self.is_rational() {
            return Interval::point(self.coords[0].clone());
        }
        // Aim well below the requested width so callers comparing against
        // nearby decimal bounds get headroom.
        let target = width * &Rational::new(1, 16);
        let mut alpha = f.best_interval();
        loop {
            let v = self.eval_interval(&alpha);
            if v.width() <= target {
                return v;
            }
            alpha = f.bisect(&alpha);
        }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        if self.is_rational() {
            return self.coords[0].signum();
        }
        let f = self.field.as_ref().unwrap();
        // A reducible defining polynomial could make a nonzero coordinate
        // vector vanish at α; detect that before refining.
        let g = self.poly().gcd(f.min_poly());
        if !g.is_constant() {
            let iv = &f.isolating_interval;
            if SturmChain::new(&g).count_closed(&iv.lo, &iv.hi) == 1 {
                return 0;
            }
        }
        let mut alpha = f.best_interval();
        loop {
            if let Some(s) = self.eval_interval(&alpha).sign() {
                return s;
            }
            alpha = f.bisect(&alpha);
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(&Rational::pow2(-60)).midpoint().to_f64()
    }
}

/// Exact field arithmetic with explicit error reporting.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement, AlgebraicError> {
    let field = a.common_field(b)?;
    let (pa, pb) = (a.lift(&field), b.lift(&field));
    let poly = match op {
        FieldOp::Add => &pa + &pb,
        FieldOp::Sub => &pa - &pb,
        FieldOp::Mul => &pa * &pb,
        FieldOp::Div => {
            let inv = b.try_inverse()?;
            return field_arith(a, &inv, FieldOp::Mul);
        }
    };
    Ok(FieldElement::reduce(field, &poly))
}

pub fn sign_of(a: &FieldElement) -> i8 {
    a.sign()
}

pub fn to_interval(a: &FieldElement, width: &Rational) -> Interval {
    a.to_interval(width)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.is_rational() && other.is_rational() {
            return self.coords[0] == other.coords[0];
        }
        self.field == other.field && self.coords == other.coords
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                field_arith(&self, &rhs, $op).expect("field elements from different fields")
            }
        }
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                field_arith(self, rhs, $op).expect("field elements from different fields")
            }
        }
    };
}

field_binop!(Add, add, FieldOp::Add);
field_binop!(Sub, sub, FieldOp::Sub);
field_binop!(Mul, mul, FieldOp::Mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        FieldElement::rational(Rational::zero())
    }

    fn one() -> Self {
        FieldElement::rational(Rational::one())
    }

    fn from_rational(q: Rational) -> Self {
        FieldElement::rational(q)
    }

    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }

    fn inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }

    fn as_rational(&self) -> Option<Rational> {
        self.to_rational()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(field) = &self.field else {
            return write!(f, "{}", self.coords[0]);
        };
        if self.is_rational() {
            return write!(f, "{}", self.coords[0]);
        }
        let sym = field.symbol();
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if i > 0 && a.is_one() { String::new() } else { a.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}{sym}")?,
                _ => write!(f, "{coeff}{sym}^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire description of a field, used where many elements share one field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescriptor {
    pub symbol: String,
    pub min_poly: UnivariatePolynomial,
    pub interval: [Rational; 2],
}

/// Wire form shared by field elements: the defining polynomial, the
/// isolating interval and the power-basis coordinates.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldElementRepr {
    min_poly: UnivariatePolynomial,
    interval: [Rational; 2],
    coords: Vec<Rational>,
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match &self.field {
            None => FieldElementRepr {
                min_poly: UnivariatePolynomial::x(),
                interval: [Rational::zero(), Rational::zero()],
                coords: self.coords.clone(),
            },
            Some(f) => FieldElementRepr {
                min_poly: f.min_poly.clone(),
                interval: [f.isolating_interval.lo.clone(), f.isolating_interval.hi.clone()],
                coords: self.coords.clone(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FieldElementRepr::deserialize(deserializer)?;
        if repr.min_poly == UnivariatePolynomial::x() {
            if repr.coords.len() != 1 {
                return Err(D::Error::custom("rational element needs exactly one coordinate"));
            }
            return Ok(FieldElement::rational(repr.coords[0].clone()));
        }
        let [lo, hi] = repr.interval;
        if lo > hi {
            return Err(D::Error::custom("interval lower bound exceeds upper bound"));
        }
        let field = RealAlgebraicField::new(repr.min_poly, Interval::new(lo, hi), true).map_err(D::Error::custom)?;
        if repr.coords.len() != field.degree() {
            return Err(D::Error::custom("coordinate count must equal the field degree"));
        }
        Ok(FieldElement::from_coords(field, repr.coords))
    }
}

/// The real root of a monic integer square-free polynomial inside `iv`,
/// as a field generator. Used when eigenvalues of degree three or more are
/// adjoined.
pub fn field_from_root(
    min_poly: &UnivariatePolynomial,
    iv: &Interval,
    assume_irreducible: bool,
) -> Result<Arc<RealAlgebraicField>, AlgebraicError> {
    RealAlgebraicField::new(min_poly.clone(), iv.clone(), assume_irreducible)
}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::rational(Rational::zero())
    }
}

#[allow(dead_code)]
fn _assert_traits() {
    fn is_send_sync<T: Send + Sync>() {}
    is_send_sync::<FieldElement>();
    let _ = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn sqrt2() -> Arc<RealAlgebraicField> {
        RealAlgebraicField::sqrt(&BigInt::from(2)).unwrap()
    }

    fn el(f: &Arc<RealAlgebraicField>, c: &[i64]) -> FieldElement {
        FieldElement::from_coords(f.clone(), c.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let k = sqrt2();
        let r = el(&k, &[0, 1]) * el(&k, &[0, 1]);
        assert_eq!(r, FieldElement::rational(q(2, 1)));
    }

    #[test]
    fn conjugate_sum_and_product() {
        let k = sqrt2();
        let a = el(&k, &[1, 1]);
        let b = el(&k, &[1, -1]);
        assert_eq!(&a + &b, FieldElement::rational(q(2, 1)));
        assert_eq!(&a * &b, FieldElement::rational(q(-1, 1)));
    }

    #[test]
    fn signs() {
        let k = sqrt2();
        let one = FieldElement::rational(q(1, 1));
        assert_eq!(sign_of(&(one - el(&k, &[1, 1]))), -1);
        assert_eq!(sign_of(&FieldElement::zero()), 0);
        assert_eq!(sign_of(&el(&k, &[2, -1])), 1);
        // 1393/985 < √2 < 577/408
        let tight = FieldElement::from_coords(k.clone(), vec![q(-1393, 985), q(1, 1)]);
        assert_eq!(sign_of(&tight), 1);
        let tight = FieldElement::from_coords(k.clone(), vec![q(-577, 408), q(1, 1)]);
        assert_eq!(sign_of(&tight), -1);
    }

    #[test]
    fn intervals() {
        let k = sqrt2();
        let iv = to_interval(&el(&k, &[0, 1]), &q(1, 1000));
        assert!(iv.width() <= q(1, 1000));
        assert!(iv.lo >= q(1414, 1000) && iv.hi <= q(14143, 10000));
        assert_eq!(to_interval(&FieldElement::rational(q(3, 2)), &q(1, 10)), Interval::point(q(3, 2)));
        let iv = to_interval(&el(&k, &[0, -1]), &q(1, 1_000_000));
        assert!(iv.width() <= q(1, 1_000_000));
        // -√2 = -1.41421356237...
        assert!(iv.lo <= q(-141421356, 100_000_000) && iv.hi >= q(-141421357, 100_000_000));
    }

    #[test]
    fn division_and_errors() {
        let k = sqrt2();
        let a = el(&k, &[3, 2]);
        let b = el(&k, &[1, 1]);
        let c = field_arith(&a, &b, FieldOp::Div).unwrap();
        assert_eq!(&c * &b, a);
        assert_eq!(field_arith(&a, &FieldElement::zero(), FieldOp::Div), Err(AlgebraicError::DivisionByZero));
        let k3 = RealAlgebraicField::sqrt(&BigInt::from(3)).unwrap();
        let d = el(&k3, &[0, 1]);
        assert_eq!(field_arith(&a, &d, FieldOp::Add), Err(AlgebraicError::FieldMismatch));
    }

    #[test]
    fn rejects_bad_fields() {
        let reducible = UnivariatePolynomial::from_i64(&[-1, 0, 1]);
        let iv = Interval::new(q(1, 2), q(2, 1));
        assert_eq!(RealAlgebraicField::new(reducible, iv.clone(), false).unwrap_err(), AlgebraicError::Reducible);
        let cubic = UnivariatePolynomial::from_i64(&[-2, 0, 0, 1]);
        assert!(RealAlgebraicField::new(cubic, iv.clone(), false).is_ok());
        let quartic = UnivariatePolynomial::from_i64(&[-2, 0, 0, 0, 1]);
        assert_eq!(
            RealAlgebraicField::new(quartic.clone(), iv.clone(), false).unwrap_err(),
            AlgebraicError::IrreducibilityUnverified(4)
        );
        assert!(RealAlgebraicField::new(quartic, iv, true).is_ok());
        let wide = Interval::new(q(-2, 1), q(2, 1));
        assert_eq!(
            RealAlgebraicField::new(UnivariatePolynomial::from_i64(&[-2, 0, 1]), wide, false).unwrap_err(),
            AlgebraicError::NotIsolating
        );
    }

    #[test]
    fn serde_roundtrip() {
        let k = sqrt2();
        let a = el(&k, &[1, -1]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"min_poly":["-2","0","1"],"interval":["1","2"],"coords":["1","-1"]}"#);
        let back: FieldElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let r = FieldElement::rational(q(-3, 4));
        let back: FieldElement = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

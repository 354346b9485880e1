use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;

/// Univariate polynomial over Q, coefficients in ascending degree with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        self.eval(x).signum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Rational::from(i as i64)).collect())
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        let lc = divisor.leading_coefficient();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            // Keep remainders primitive-ish to curb coefficient growth.
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coefficient().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `x^deg * p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `p(c x)`
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// `p(x + c)`
    pub fn shift(&self, c: &Rational) -> Self {
        self.compose(&Self::new(vec![c.clone(), Rational::one()]))
    }

    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        self.exact_div(&self.gcd(&self.derivative())).unwrap().monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime factors `a_k`
    /// with `monic(self) = prod a_k^k`. Only non-constant factors are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = fp.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap_or_else(Self::zero);
            if !a.is_constant() {
                out.push((a.monic(), k));
            }
            if b.is_constant() {
                break;
            }
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Scales to a primitive polynomial with integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = Rational::common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * &Rational::from_integer(den.clone())).to_integer().unwrap()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if self.leading_coefficient().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|x| x / &g * &sign).collect()
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Cauchy bound: every complex root has modulus strictly below this value.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading_coefficient().abs();
        let m = self.coeffs[..self.deg()].iter().map(|c| c.abs() / &lc).fold(Rational::zero(), Rational::max);
        // Rounded up to an integer so search boxes built on it stay cheap.
        Rational::from_integer((m + Rational::one()).ceil())
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rational) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let lin = Self::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_div(&lin) {
            if q.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UnivariatePolynomial::new(out)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: UnivariatePolynomial) -> UnivariatePolynomial {
        &self * &rhs
    }
}

impl Add for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: UnivariatePolynomial) -> UnivariatePolynomial {
        &self + &rhs
    }
}

impl Sub for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: UnivariatePolynomial) -> UnivariatePolynomial {
        &self - &rhs
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
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
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for UnivariatePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnivariatePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Self::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

impl One for UnivariatePolynomial {
    fn one() -> Self {
        UnivariatePolynomial::one()
    }
}

impl Zero for UnivariatePolynomial {
    fn zero() -> Self {
        UnivariatePolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -2, 1]).to_string(), "x^2 - 2x - 1");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(UnivariatePolynomial::new(vec![q(1, 2), q(-3, 1)]).to_string(), "-3x + (1/2)");
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[-1, 1]); // x - 1
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        let (g, s, t) = p(&[1, 0, 1]).extended_gcd(&p(&[0, 1]));
        assert_eq!(g, UnivariatePolynomial::one());
        assert_eq!(&(&s * &p(&[1, 0, 1])) + &(&t * &p(&[0, 1])), g);
    }

    #[test]
    fn yun_decomposition() {
        // (x - 1)^2 (x + 2)^3 (x^2 + 1)
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1]).pow(3)) * &p(&[1, 0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
        assert_eq!(f.root_multiplicity(&Rational::from(-2)), 3);
    }

    #[test]
    fn reverse_involution() {
        let f = p(&[3, 0, -2, 5]);
        assert_eq!(f.reverse().reverse(), f);
    }

    #[test]
    fn primitive_integer_scaling() {
        let f = UnivariatePolynomial::new(vec![q(1, 2), q(-3, 4), q(1, 1)]);
        let ints: Vec<i64> = f.primitive_integer().iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(ints, vec![2, -3, 4]);
    }

    #[test]
    fn compose_and_shift() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.shift(&Rational::from(1)), p(&[-1, 2, 1]));
        assert_eq!(f.compose(&p(&[0, 2])), p(&[-2, 0, 4]));
    }
}

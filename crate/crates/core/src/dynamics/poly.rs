//! Sparse multivariate polynomials with rational coefficients and maps built
//! from them.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{Rational, RationalMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Option<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return None;
            }
            p.add_term(e, c);
        }
        Some(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames variable `i` to `offset + i` inside `nvars` variables.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            f[offset..offset + self.nvars].copy_from_slice(e);
            p.add_term(f, c.clone());
        }
        p
    }

    /// `self(subs_0, ..., subs_{k-1})`, all substitutes in `nvars` variables.
    pub fn compose(&self, subs: &[MultiPoly], nvars: usize) -> Self {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let mut powers: Vec<Vec<MultiPoly>> =
            subs.iter().map(|s| vec![Self::constant(nvars, Rational::one()), s.clone()]).collect();
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// First coordinate in the binomial basis `Π C(x_i, k_i)` that is not an
    /// integer. The polynomial maps `Z^n` to `Z` exactly when there is none.
    /// Coordinates are the iterated forward differences at the origin.
    pub fn non_integer_binomial_coordinate(&self) -> Option<(Vec<u32>, Rational)> {
        if self.is_zero() {
            return None;
        }
        let dims: Vec<usize> = (0..self.nvars).map(|i| self.degree_in(i) as usize + 1).collect();
        let total: usize = dims.iter().product();
        let index = |mut k: usize| -> Vec<u32> {
            let mut e = vec![0u32; dims.len()];
            for a in (0..dims.len()).rev() {
                e[a] = (k % dims[a]) as u32;
                k /= dims[a];
            }
            e
        };
        let mut values: Vec<Rational> = (0..total)
            .map(|k| self.eval(&index(k).iter().map(|&x| Rational::from(x as i64)).collect::<Vec<_>>()))
            .collect();
        let mut stride = 1;
        for a in (0..dims.len()).rev() {
            // forward differences along axis a, one order at a time
            for order in 1..dims[a] {
                for k in (0..total).rev() {
                    let t = (k / stride) % dims[a];
                    if t >= order {
                        let prev = values[k - stride].clone();
                        values[k] -= &prev;
                    }
                }
            }
            stride *= dims[a];
        }
        values.into_iter().enumerate().find(|(_, v)| !v.is_integer()).map(|(k, v)| (index(k), v))
    }

    pub fn is_integer_valued(&self) -> bool {
        self.non_integer_binomial_coordinate().is_none()
    }

    /// Renders the monomial with the given variable names.
    pub fn fmt_monomial(e: &[u32], names: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { names(i) } else { format!("{}^{k}", names(i)) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn to_string_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = Self::fmt_monomial(e, names);
            if mono == "1" {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

pub(crate) fn default_name(i: usize) -> String {
    format!("x{}", i + 1)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_name))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &-rhs
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    exponents: Vec<u32>,
    coeff: Rational,
}

/// Terms are written in descending exponent order (`x` before `y`).
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermRepr { exponents: e.clone(), coeff: c.clone() })?;
        }
        seq.end()
    }
}

/// Polynomial map `Q^arity -> Q^outputs`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    arity: usize,
    outputs: Vec<MultiPoly>,
}

impl PolynomialMap {
    pub fn new(arity: usize, outputs: Vec<MultiPoly>) -> Self {
        assert!(outputs.iter().all(|p| p.nvars == arity), "output arity mismatch");
        PolynomialMap { arity, outputs }
    }

    /// The linear map `x ↦ A x`.
    pub fn from_matrix(a: &RationalMatrix) -> Self {
        let outputs = (0..a.rows()).map(|i| MultiPoly::linear(&a.row(i))).collect();
        PolynomialMap { arity: a.cols(), outputs }
    }

    pub fn identity(n: usize) -> Self {
        PolynomialMap { arity: n, outputs: (0..n).map(|i| MultiPoly::var(n, i)).collect() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn outputs(&self) -> &[MultiPoly] {
        &self.outputs
    }

    pub fn output(&self, i: usize) -> &MultiPoly {
        &self.outputs[i]
    }

    pub fn eval(&self, point: &[Rational]) -> Vec<Rational> {
        self.outputs.iter().map(|p| p.eval(point)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &[MultiPoly], nvars: usize) -> Vec<MultiPoly> {
        self.outputs.iter().map(|p| p.compose(inner, nvars)).collect()
    }

    /// Jacobian at the origin: the degree-one coefficients.
    pub fn linear_part(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.outputs.len(), self.arity, |i, j| {
            let mut e = vec![0; self.arity];
            e[j] = 1;
            self.outputs[i].coeff(&e)
        })
    }

    /// Reinterprets the map with `arity` inputs. Only an all-zero map, whose
    /// terms carry no exponent vectors, can change arity.
    pub fn with_arity(mut self, arity: usize) -> Option<Self> {
        if self.arity == arity {
            return Some(self);
        }
        if self.outputs.iter().all(MultiPoly::is_zero) {
            self.arity = arity;
            for p in &mut self.outputs {
                p.nvars = arity;
            }
            return Some(self);
        }
        None
    }
}

impl fmt::Debug for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.outputs).finish()
    }
}

impl Serialize for PolynomialMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.outputs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolynomialMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<Vec<TermRepr>> = Vec::deserialize(deserializer)?;
        let arity = raw.iter().flatten().map(|t| t.exponents.len()).next().unwrap_or(0);
        let mut outputs = Vec::with_capacity(raw.len());
        for (i, terms) in raw.into_iter().enumerate() {
            let p =
                MultiPoly::from_terms(arity, terms.into_iter().map(|t| (t.exponents, t.coeff))).ok_or_else(|| {
                    D::Error::custom(format!("output {i}: all exponent vectors must have length {arity}"))
                })?;
            outputs.push(p);
        }
        Ok(PolynomialMap { arity, outputs })
    }
}

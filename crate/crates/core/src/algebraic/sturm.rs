//! Sturm sequences, real root counting and Cauchy indices over Q.

use crate::exact::{Rational, UnivariatePolynomial};

/// Signed remainder sequence starting `(a, b)`.
pub fn signed_remainder_sequence(a: &UnivariatePolynomial, b: &UnivariatePolynomial) -> Vec<UnivariatePolynomial> {
    let mut seq = vec![a.clone()];
    if b.is_zero() {
        return seq;
    }
    seq.push(b.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps the sign pattern and tames growth.
        let lc = r.leading_coefficient().abs();
        seq.push(-&r.scale(&lc.recip()));
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn variations_at(seq: &[UnivariatePolynomial], x: &Rational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

pub fn variations_at_pos_inf(seq: &[UnivariatePolynomial]) -> usize {
    variations(seq.iter().map(|p| p.leading_coefficient().signum()))
}

pub fn variations_at_neg_inf(seq: &[UnivariatePolynomial]) -> usize {
    variations(seq.iter().map(|p| {
        let s = p.leading_coefficient().signum();
        if p.deg() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Sturm chain of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<UnivariatePolynomial>,
}

impl SturmChain {
    pub fn new(p: &UnivariatePolynomial) -> Self {
        SturmChain { seq: signed_remainder_sequence(p, &p.derivative()) }
    }

    pub fn poly(&self) -> &UnivariatePolynomial {
        &self.seq[0]
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        variations_at(&self.seq, a).saturating_sub(variations_at(&self.seq, b))
    }

    /// Distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        if a > b {
            return 0;
        }
        let at_a = usize::from(self.poly().eval(a).is_zero());
        if a == b {
            return at_a;
        }
        at_a + self.count_half_open(a, b)
    }

    /// Distinct real roots in `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.count_half_open(a, b) - usize::from(self.poly().eval(b).is_zero())
    }

    pub fn count_all(&self) -> usize {
        variations_at_neg_inf(&self.seq) - variations_at_pos_inf(&self.seq)
    }
}

/// Cauchy index of `num/den` over `[a, b]`; `den` must not vanish at `a` or `b`.
pub fn cauchy_index(num: &UnivariatePolynomial, den: &UnivariatePolynomial, a: &Rational, b: &Rational) -> i64 {
    let seq = signed_remainder_sequence(den, num);
    variations_at(&seq, a) as i64 - variations_at(&seq, b) as i64
}

/// Cauchy index of `num/den` over the whole real line.
pub fn cauchy_index_real_line(num: &UnivariatePolynomial, den: &UnivariatePolynomial) -> i64 {
    if den.is_zero() {
        return 0;
    }
    let seq = signed_remainder_sequence(den, num);
    variations_at_neg_inf(&seq) as i64 - variations_at_pos_inf(&seq) as i64
}

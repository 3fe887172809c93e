use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Sparse Laurent polynomial in `v` with rational coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `v^exp` with coefficient one.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut v: Vec<(i64, BigRational)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Returns `(c, e)` when the polynomial is the single term `c·v^e`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i64)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `v -> v^k` for a positive integer `k`.
    pub fn inflate(&self, k: i64) -> Self {
        assert!(k > 0, "inflation factor must be positive");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a rational point. Panics on `v = 0` with negative exponents present.
    pub fn eval(&self, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * rational_pow(v, *e);
        }
        acc
    }

    fn add_into(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }

    fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = other.as_monomial() {
            return Self {
                terms: self.terms.iter().map(|(x, y)| (x + e, y * c)).collect(),
            };
        }
        if let Some((c, e)) = self.as_monomial() {
            return Self {
                terms: other.terms.iter().map(|(x, y)| (x + e, c * y)).collect(),
            };
        }
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc.push((ea + eb, ca * cb));
            }
        }
        Self::from_terms(acc)
    }

    /// Dense coefficient vector of `v^{-min_exp}·self`, lowest degree first.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    pub(crate) fn from_dense(offset: i64, dense: &[BigRational]) -> Self {
        Self {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (offset + i as i64, c.clone()))
                .collect(),
        }
    }
}

/// `v^e` for rational `v` and any integer `e`.
pub(crate) fn rational_pow(v: &BigRational, e: i64) -> BigRational {
    let p = Pow::pow(v, e.unsigned_abs());
    if e < 0 {
        p.recip()
    } else {
        p
    }
}


impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_into(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_into(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match (*e, show_coeff) {
                (0, _) => {}
                (1, true) => write!(f, "*v")?,
                (1, false) => write!(f, "v")?,
                (_, true) => write!(f, "*v^{}", e)?,
                (_, false) => write!(f, "v^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let x = LaurentPoly::from_terms(vec![(1, rat(1, 1)), (-1, rat(2, 1)), (1, rat(-1, 1))]);
        assert_eq!(x, p(&[(-1, 2)]));
    }

    #[test]
    fn product_of_binomials() {
        // (v - 1)(v + 1) = v^2 - 1
        let a = p(&[(1, 1), (0, -1)]);
        let b = p(&[(1, 1), (0, 1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn subtraction_cancels() {
        let a = p(&[(-3, 4), (5, 1)]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn inflate_and_eval() {
        let a = p(&[(-1, 1), (2, 3)]);
        let v = rat(2, 1);
        assert_eq!(a.inflate(2).eval(&v), a.eval(&rat(4, 1)));
        assert_eq!(a.eval(&v), rat(1, 2) + rat(12, 1));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[(2, 1), (0, -1), (-1, 3)]).to_string(), "v^2 - 1 + 3*v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = p(&[(1, 1), (-1, -1)]);
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert!(a.pow(0).is_one());
    }
}

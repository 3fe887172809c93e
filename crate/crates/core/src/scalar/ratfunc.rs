use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{rat, LaurentPoly};
use crate::error::{Error, Result};

/// An element of Q(v), kept in canonical form.
///
/// Canonical form: `den` has zero minimal exponent and leading coefficient 1,
/// and `gcd(num, den)` is a unit. Every monomial factor lives in `num`, so a
/// Laurent polynomial is exactly a scalar with `den == 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(rat(k, 1))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::v_pow(e))
    }

    /// Builds `num/den` and normalizes it.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(e)` when the value is exactly `v^e`.
    pub fn as_unit_monomial(&self) -> Option<i64> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.as_monomial() {
            Some((c, e)) if c.is_one() => Some(e),
            _ => None,
        }
    }

    /// `Some(c)` when the value is a constant rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        if !self.den.is_one() {
            return None;
        }
        match self.num.as_monomial() {
            Some((c, 0)) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Ok(Self::normalize(self.num.clone(), rhs.num.clone()));
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).expect("exponent fits in u32");
        Ok(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Substitutes `v -> v^k`; used when the session root is refined.
    pub fn inflate(&self, k: i64) -> Self {
        Self::normalize(self.num.inflate(k), self.den.inflate(k))
    }

    /// Value at a rational point, or `None` at a pole.
    pub fn eval(&self, v: &BigRational) -> Option<BigRational> {
        if v.is_zero() && self.num.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let d = self.den.eval(v);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(v) / d)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        // Move the monomial part of the denominator into the numerator.
        let s = den.min_exp().unwrap();
        let (mut num, mut den) = if s == 0 {
            (num, den)
        } else {
            (num.shift(-s), den.shift(-s))
        };
        if den.len() > 1 {
            let g = poly_gcd(&num, &den);
            if g.len() > 1 {
                num = exact_quotient(&num, &g);
                den = exact_quotient(&den, &g);
            }
        }
        let lead = den.leading_coeff().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    fn add_sub(&self, rhs: &Self, sub: bool) -> Self {
        let combine = |a: &LaurentPoly, b: &LaurentPoly| if sub { a - b } else { a + b };
        if self.den == rhs.den {
            let num = combine(&self.num, &rhs.num);
            if self.den.is_one() || num.is_zero() {
                return Self::from_poly(num).with_den(self.den.clone());
            }
            return Self::normalize(num, self.den.clone());
        }
        // a + b/d with coprime b, d needs no reduction: gcd(a·d + b, d) = gcd(b, d).
        if self.den.is_one() {
            let num = combine(&(&self.num * &rhs.den), &rhs.num);
            return Self {
                num,
                den: rhs.den.clone(),
            }
            .tidy();
        }
        if rhs.den.is_one() {
            let num = combine(&self.num, &(&rhs.num * &self.den));
            return Self {
                num,
                den: self.den.clone(),
            }
            .tidy();
        }
        Self::normalize(
            combine(&(&self.num * &rhs.den), &(&rhs.num * &self.den)),
            &self.den * &rhs.den,
        )
    }

    fn with_den(mut self, den: LaurentPoly) -> Self {
        if !self.num.is_zero() {
            self.den = den;
        }
        self
    }

    fn tidy(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Monic gcd of two Laurent polynomials viewed as ordinary polynomials
/// (monomial factors are ignored).
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (_, mut x) = a.to_dense();
    let (_, mut y) = b.to_dense();
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) && !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(BigRational::one);
    let inv = lead.recip();
    let x: Vec<BigRational> = x.iter().map(|c| c * &inv).collect();
    LaurentPoly::from_dense(0, &x)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    dense_divrem(a, b).1
}

fn dense_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    if db == 0 {
        r = vec![BigRational::zero()];
    }
    (quot, r)
}

/// `a / g` where `g` has zero minimal exponent and divides `a` exactly.
fn exact_quotient(a: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let (off, da) = a.to_dense();
    let (_, dg) = g.to_dense();
    let (q, r) = dense_divrem(&da, &dg);
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial quotient");
    LaurentPoly::from_dense(off, &q)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_sub(rhs, false)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_sub(rhs, true)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for fallible code.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by the zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::from_int(k)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl From<BigInt> for Scalar {
    fn from(c: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(c))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::ratfunc::Scalar;
use crate::error::{Error, Result};

/// Power series `c_0 + c_1 ħ + ... + c_m ħ^m` in `ħ = log q`, truncated at order `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `exp(t·ħ)` truncated at `order`.
    pub fn exp_linear(t: &BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        for k in 0..=order {
            if k > 0 {
                term = term * t / BigRational::from_integer(BigInt::from(k));
            }
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let m = self.order();
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); m + 1];
        out[0] = inv0.clone();
        for k in 1..=m {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &inv0;
        }
        Some(Self { coeffs: out })
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_order(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_order(rhs);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_order(rhs);
        let m = self.order();
        let mut out = vec![BigRational::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

fn expand_poly(p: &LaurentPoly, order: usize, d: u64) -> TruncatedSeries {
    let dd = BigRational::from_integer(BigInt::from(d));
    let mut acc = TruncatedSeries::zero(order);
    for (e, c) in p.terms() {
        let t = BigRational::from_integer(BigInt::from(*e)) / &dd;
        let mut s = TruncatedSeries::exp_linear(&t, order);
        for x in s.coeffs.iter_mut() {
            *x *= c;
        }
        acc = &acc + &s;
    }
    acc
}

/// Taylor expansion of `s` around `q = 1` under `v = e^{ħ/D}`.
pub fn expand_at_one(s: &Scalar, order: usize, d: u64) -> Result<TruncatedSeries> {
    let num = expand_poly(s.num(), order, d);
    let den = expand_poly(s.den(), order, d);
    let inv = den.inverse().ok_or(Error::PoleAtOne)?;
    Ok(&num * &inv)
}

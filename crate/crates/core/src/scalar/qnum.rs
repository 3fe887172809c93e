use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::ratfunc::Scalar;
use crate::error::{Error, Result};

/// Which q-analogue of an integer to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QNumberKind {
    /// `k_q = (q^k - 1)/(q - 1)`.
    ExpBasis,
    /// `[k]_q = (q^k - q^{-k})/(q - q^{-1})`.
    Symmetric,
}

/// The root `v = q^{1/D}` fixed for one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QRoot {
    d: u64,
}

impl QRoot {
    pub fn new(d: u64) -> Self {
        assert!(d > 0, "root denominator must be positive");
        Self { d }
    }

    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn q(&self) -> Scalar {
        Scalar::v_pow(self.d as i64)
    }

    /// `q^k` for an integer `k`.
    pub fn q_int(&self, k: i64) -> Scalar {
        Scalar::v_pow(k * self.d as i64)
    }

    /// `q^x` for rational `x`; requires `D·x` integral.
    pub fn q_pow(&self, x: &BigRational) -> Result<Scalar> {
        Ok(Scalar::v_pow(self.v_exponent(x)?))
    }

    /// The integer `D·x`.
    pub fn v_exponent(&self, x: &BigRational) -> Result<i64> {
        let scaled = x * BigRational::from_integer(BigInt::from(self.d));
        if !scaled.is_integer() {
            return Err(Error::ExponentNotIntegral {
                exponent: x.to_string(),
                denominator: self.d,
            });
        }
        i64::try_from(scaled.to_integer()).map_err(|_| Error::ExponentNotIntegral {
            exponent: x.to_string(),
            denominator: self.d,
        })
    }

    /// `λ = q - q^{-1}`.
    pub fn lambda(&self) -> Scalar {
        &self.q_int(1) - &self.q_int(-1)
    }

    pub fn q_number(&self, k: u32, kind: QNumberKind) -> Scalar {
        q_number(self.d, k, kind)
    }
}

/// `k_q` or `[k]_q` with `q = v^D`.
pub fn q_number(d: u64, k: u32, kind: QNumberKind) -> Scalar {
    let d = d as i64;
    let k = k as i64;
    // Both are finite geometric sums, so they are Laurent polynomials.
    let terms: Vec<(i64, BigRational)> = match kind {
        QNumberKind::ExpBasis => (0..k).map(|j| (j * d, BigRational::one())).collect(),
        QNumberKind::Symmetric => (0..k).map(|j| ((k - 1 - 2 * j) * d, BigRational::one())).collect(),
    };
    Scalar::from_poly(LaurentPoly::from_terms(terms))
}

pub fn q_factorial(d: u64, k: u32, kind: QNumberKind) -> Scalar {
    (1..=k).fold(Scalar::one(), |acc, j| &acc * &q_number(d, j, kind))
}

/// Symmetric q-binomial `[n choose k]_q`.
pub fn q_binomial(d: u64, n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let kind = QNumberKind::Symmetric;
    let num = q_factorial(d, n, kind);
    let den = &q_factorial(d, k, kind) * &q_factorial(d, n - k, kind);
    num.checked_div(&den).expect("q-factorials are nonzero")
}

/// `k_Q = 1 + Q + ... + Q^{k-1}` for an arbitrary base `Q`.
pub fn base_number(base: &Scalar, k: u32) -> Scalar {
    let mut acc = Scalar::zero();
    let mut p = Scalar::one();
    for _ in 0..k {
        acc = &acc + &p;
        p = &p * base;
    }
    acc
}

/// Least common multiple of the denominators of `xs`, at least 1.
pub fn lcm_denominators<'a, I>(xs: I) -> u64
where
    I: IntoIterator<Item = &'a BigRational>,
{
    let mut l = BigInt::one();
    for x in xs {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    u64::try_from(l).expect("denominator lcm fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::laurent::rat;

    #[test]
    fn small_q_numbers() {
        for kind in [QNumberKind::ExpBasis, QNumberKind::Symmetric] {
            assert!(q_number(1, 0, kind).is_zero());
            assert!(q_number(3, 1, kind).is_one());
        }
        let q = Scalar::v_pow(1);
        assert_eq!(q_number(1, 2, QNumberKind::ExpBasis), &q + &Scalar::one());
        assert_eq!(q_number(1, 2, QNumberKind::Symmetric), &q + &Scalar::v_pow(-1));
    }

    #[test]
    fn exp_basis_matches_quotient() {
        let q = Scalar::v_pow(2);
        for k in 0..6 {
            let direct = (&q.pow(k as i64).unwrap() - &Scalar::one())
                .checked_div(&(&q - &Scalar::one()))
                .unwrap();
            assert_eq!(q_number(2, k, QNumberKind::ExpBasis), direct);
        }
    }

    #[test]
    fn binomial_two_choose_one() {
        assert_eq!(q_binomial(1, 2, 1), q_number(1, 2, QNumberKind::Symmetric));
        assert!(q_binomial(1, 2, 0).is_one());
        assert!(q_binomial(1, 2, 3).is_zero());
    }

    #[test]
    fn q_pow_rejects_fractional_exponent() {
        let root = QRoot::new(4);
        assert_eq!(root.q_pow(&rat(-1, 4)).unwrap(), Scalar::v_pow(-1));
        assert!(matches!(root.q_pow(&rat(1, 6)), Err(Error::ExponentNotIntegral { .. })));
    }

    #[test]
    fn lcm_of_denominators() {
        assert_eq!(lcm_denominators(&[rat(1, 4), rat(1, 6), rat(0, 1)]), 12);
        assert_eq!(lcm_denominators(&[]), 1);
    }
}

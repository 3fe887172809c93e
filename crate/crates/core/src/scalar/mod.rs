//! Exact arithmetic in Q(v), where `v = q^{1/D}`.

mod laurent;
mod qnum;
mod ratfunc;
mod series;

pub use laurent::LaurentPoly;
pub use qnum::{base_number, lcm_denominators, q_binomial, q_factorial, q_number, QNumberKind, QRoot};
pub use ratfunc::Scalar;
pub use series::{expand_at_one, TruncatedSeries};

#[cfg(test)]
pub(crate) use laurent::rat;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Field operations needed by the generic matrix code.
///
/// Method names avoid clashing with `std::ops` when both are in scope.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    /// Preference when choosing pivots; lower is better.
    fn pivot_cost(&self) -> usize {
        0
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn pivot_cost(&self) -> usize {
        self.num().len() + self.den().len()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

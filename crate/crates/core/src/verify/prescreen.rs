use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Witness;
use crate::linalg::{QvMatrix, RatMatrix};

/// Random rational evaluation of both sides of a product identity.
///
/// It can only find a witness; agreement at a sample point proves nothing.
#[derive(Clone, Debug)]
pub struct Prescreen {
    rng: ChaCha8Rng,
}

impl Prescreen {
    pub const DEFAULT_SEED: u64 = 0x5eed;

    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A rational `v` away from `0` and `±1`.
    pub fn sample(&mut self) -> BigRational {
        loop {
            let num: i64 = self.rng.gen_range(2..10_000);
            let den: i64 = self.rng.gen_range(1..10_000);
            let x = BigRational::new(BigInt::from(num), BigInt::from(den));
            if x != BigRational::from_integer(1.into()) {
                return x;
            }
        }
    }

    /// Compares `∏ lhs` and `∏ rhs` at a random point.
    pub fn screen(&mut self, lhs: &[&QvMatrix], rhs: &[&QvMatrix]) -> Option<Witness> {
        for _ in 0..3 {
            let v = self.sample();
            let (Some(l), Some(r)) = (eval_product(lhs, &v), eval_product(rhs, &v)) else {
                continue;
            };
            return l.first_difference(&r).map(|(row, col)| Witness {
                row,
                col,
                lhs: format!("{} at v={v}", l.get(row, col)),
                rhs: format!("{} at v={v}", r.get(row, col)),
            });
        }
        None
    }
}

fn eval_product(ms: &[&QvMatrix], v: &BigRational) -> Option<RatMatrix> {
    let mut acc = ms[0].eval_at(v)?;
    for m in &ms[1..] {
        acc = &acc * &m.eval_at(v)?;
    }
    Some(acc)
}

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Legs, QvMatrix, RatMatrix};
use crate::scalar::expand_at_one;

/// First-order coefficient of `R` at `q = e^ħ`; the zeroth order must be the identity.
pub fn classical_r(r: &QvMatrix, d: u64) -> Result<RatMatrix> {
    let dim = r.dim();
    let mut out = RatMatrix::zeros(dim);
    for row in 0..dim {
        for col in 0..dim {
            let s = expand_at_one(r.get(row, col), 1, d)?;
            let c0 = s.coeff(0);
            let expected = if row == col { BigRational::one() } else { BigRational::zero() };
            if *c0 != expected {
                return Err(Error::NotIdentityAtZero);
            }
            out.set(row, col, s.coeff(1).clone());
        }
    }
    Ok(out)
}

/// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]` on `V⊗V⊗V`.
pub fn cybe_defect(r: &RatMatrix, n: usize) -> RatMatrix {
    let (r12, r13, r23) = (r.leg(n, Legs::L12), r.leg(n, Legs::L13), r.leg(n, Legs::L23));
    let comm = |a: &RatMatrix, b: &RatMatrix| &(a * b) - &(b * a);
    &(&comm(&r12, &r13) + &comm(&r12, &r23)) + &comm(&r13, &r23)
}

/// `r + r₂₁`.
pub fn symmetric_part(r: &RatMatrix, n: usize) -> RatMatrix {
    r + &r.swap_legs(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn identity_has_zero_r() {
        let r = classical_r(&QvMatrix::identity(4), 1).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn first_order_of_diagonal() {
        // q^{1/2} on one entry -> ħ/2
        let mut m = QvMatrix::identity(4);
        m.set(0, 0, Scalar::v_pow(1));
        let r = classical_r(&m, 2).unwrap();
        assert_eq!(r.get(0, 0), &BigRational::new(1.into(), 2.into()));
        assert!(cybe_defect(&r, 2).is_zero());
    }

    #[test]
    fn nonidentity_at_zero_is_rejected() {
        let m = QvMatrix::identity(4).scale(&Scalar::from_int(2));
        assert_eq!(classical_r(&m, 1), Err(Error::NotIdentityAtZero));
    }
}

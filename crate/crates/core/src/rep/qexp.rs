use crate::error::{Error, Result};
use crate::linalg::QvMatrix;
use crate::scalar::{base_number, Scalar};

/// `exp_Q(u) = Σ_{k<m} u^k / k_Q!` with `k_Q = 1 + Q + ... + Q^{k-1}` and `m` the nilpotency order of `u`.
pub fn qexp_matrix(u: &QvMatrix, base: &Scalar) -> Result<QvMatrix> {
    let m = u.nilpotency_order()?;
    let mut acc = QvMatrix::identity(u.dim());
    let mut power = QvMatrix::identity(u.dim());
    let mut fact = Scalar::one();
    for k in 1..m {
        power = &power * u;
        let kq = base_number(base, k as u32);
        if kq.is_zero() {
            return Err(Error::DivisionByZero);
        }
        fact = &fact * &kq;
        acc = &acc + &power.scale(&fact.inv()?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gives_identity() {
        let z = QvMatrix::zeros(3);
        assert!(qexp_matrix(&z, &Scalar::v_pow(2)).unwrap().is_identity());
    }

    #[test]
    fn square_zero_truncates() {
        let u = QvMatrix::unit(3, 0, 2).scale(&Scalar::v_pow(5));
        let e = qexp_matrix(&u, &Scalar::v_pow(2)).unwrap();
        assert_eq!(e, &QvMatrix::identity(3) + &u);
    }

    #[test]
    fn cubic_term_uses_q_factorials() {
        // u = E_01 + E_12, u² = E_02
        let u = &QvMatrix::unit(3, 0, 1) + &QvMatrix::unit(3, 1, 2);
        let q = Scalar::v_pow(1);
        let e = qexp_matrix(&u, &q).unwrap();
        // 2_q! = 1 + q
        let expect = (&Scalar::one() + &q).inv().unwrap();
        assert_eq!(e.get(0, 2), &expect);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let u = QvMatrix::identity(2);
        assert_eq!(qexp_matrix(&u, &Scalar::v_pow(1)), Err(Error::NotNilpotent));
    }
}

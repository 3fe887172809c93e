use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::linalg::{DiagonalExponentMatrix, QvMatrix, RatMatrix};
use crate::roots::{build_cartan, CartanData};
use crate::scalar::{q_binomial, QRoot, Scalar};

/// Weight of basis vector `e_k` under `h_i` (both 0-based): `δ_{k,i} - δ_{k,i+1}`.
pub fn h_weight(i: usize, k: usize) -> i64 {
    i64::from(k == i) - i64::from(k == i + 1)
}

/// `q^{Σ_i c_i h_i}` on `V`, as exponents.
pub fn cartan_on_v(n: usize, c: &[BigRational]) -> DiagonalExponentMatrix {
    DiagonalExponentMatrix::new(
        (0..n)
            .map(|k| c.iter().enumerate().map(|(i, ci)| ci * BigInt::from(h_weight(i, k))).sum())
            .collect(),
    )
}

/// `q^{Σ_ij B_ij h_i⊗h_j}` on `V⊗V`, as exponents.
pub fn cartan_on_vv(n: usize, b: &RatMatrix) -> DiagonalExponentMatrix {
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            out.push(bilinear(b, |i| h_weight(i, k), |j| h_weight(j, l)));
        }
    }
    DiagonalExponentMatrix::new(out)
}

/// Which tensor factor of `q^{Σ B h⊗h}` a coproduct is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanLift {
    /// `(Δ⊗id)`: exponent `Σ B_ij (h_i⊗1 + 1⊗h_i)⊗h_j`.
    First,
    /// `(id⊗Δ)`: exponent `Σ B_ij h_i⊗(h_j⊗1 + 1⊗h_j)`.
    Second,
}

/// Coproduct image of `q^{Σ B h⊗h}` on `V⊗V⊗V`, as exponents.
pub fn cartan_lift(n: usize, b: &RatMatrix, lift: CartanLift) -> DiagonalExponentMatrix {
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for bb in 0..n {
            for c in 0..n {
                out.push(match lift {
                    CartanLift::First => bilinear(b, |i| h_weight(i, a) + h_weight(i, bb), |j| h_weight(j, c)),
                    CartanLift::Second => bilinear(b, |i| h_weight(i, a), |j| h_weight(j, bb) + h_weight(j, c)),
                });
            }
        }
    }
    DiagonalExponentMatrix::new(out)
}

fn bilinear(b: &RatMatrix, x: impl Fn(usize) -> i64, y: impl Fn(usize) -> i64) -> BigRational {
    let r = b.dim();
    let mut s = BigRational::from_integer(0.into());
    for i in 0..r {
        let xi = x(i);
        if xi == 0 {
            continue;
        }
        for j in 0..r {
            let yj = y(j);
            if yj != 0 {
                s += b.get(i, j) * BigInt::from(xi * yj);
            }
        }
    }
    s
}

/// Chevalley generators of `U_q(sl(n))` in the fundamental representation.
#[derive(Clone, Debug)]
pub struct FundamentalRep {
    pub n: usize,
    pub cartan: CartanData,
    pub root: QRoot,
    pub e: Vec<QvMatrix>,
    pub f: Vec<QvMatrix>,
    pub h: Vec<QvMatrix>,
    /// `K_i = q^{d_i h_i}`.
    pub k: Vec<DiagonalExponentMatrix>,
    pub k_mat: Vec<QvMatrix>,
    pub k_inv_mat: Vec<QvMatrix>,
}

/// Builds the fundamental representation and checks its defining relations.
pub fn fundamental_rep(n: usize, root: QRoot) -> Result<FundamentalRep> {
    let cartan = build_cartan(n)?;
    let r = cartan.rank();
    let mut rep = FundamentalRep {
        n,
        cartan,
        root,
        e: Vec::with_capacity(r),
        f: Vec::with_capacity(r),
        h: Vec::with_capacity(r),
        k: Vec::with_capacity(r),
        k_mat: Vec::with_capacity(r),
        k_inv_mat: Vec::with_capacity(r),
    };
    for i in 0..r {
        rep.e.push(QvMatrix::unit(n, i, i + 1));
        rep.f.push(QvMatrix::unit(n, i + 1, i));
        rep.h.push(QvMatrix::diagonal((0..n).map(|k| Scalar::from_int(h_weight(i, k))).collect()));
        let mut c = vec![BigRational::from_integer(0.into()); r];
        c[i] = BigRational::from_integer(rep.cartan.d(i).into());
        let k = cartan_on_v(n, &c);
        rep.k_mat.push(k.materialize(root)?);
        rep.k_inv_mat.push(k.inverse().materialize(root)?);
        rep.k.push(k);
    }
    rep.check_relations().map_err(crate::Error::Invariant)?;
    Ok(rep)
}

impl FundamentalRep {
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn identity(&self) -> QvMatrix {
        QvMatrix::identity(self.n)
    }

    /// Commutation and Serre relations of the Chevalley generators.
    pub fn check_relations(&self) -> std::result::Result<(), String> {
        let r = self.rank();
        let comm = |a: &QvMatrix, b: &QvMatrix| &(a * b) - &(b * a);
        for i in 0..r {
            for j in 0..r {
                let aij = Scalar::from_int(self.cartan.a(i, j));
                if comm(&self.h[i], &self.e[j]) != self.e[j].scale(&aij) {
                    return Err(format!("[h{}, e{}] relation fails", i + 1, j + 1));
                }
                if comm(&self.h[i], &self.f[j]) != self.f[j].scale(&-&aij) {
                    return Err(format!("[h{}, f{}] relation fails", i + 1, j + 1));
                }
                let expect = if i == j {
                    let di = self.cartan.d(i);
                    let den = &self.root.q_int(di) - &self.root.q_int(-di);
                    let inv = den.inv().expect("q is generic");
                    (&self.k_mat[i] - &self.k_inv_mat[i]).scale(&inv)
                } else {
                    QvMatrix::zeros(self.n)
                };
                if comm(&self.e[i], &self.f[j]) != expect {
                    return Err(format!("[e{}, f{}] relation fails", i + 1, j + 1));
                }
                if i != j {
                    let d = self.root.denominator() * self.cartan.d(i) as u64;
                    let unit = |_: usize| Scalar::one();
                    if !serre_sum(&self.e[i], &self.e[j], self.cartan.a(i, j), d, unit).is_zero() {
                        return Err(format!("Serre relation for e{}, e{} fails", i + 1, j + 1));
                    }
                    if !serre_sum(&self.f[i], &self.f[j], self.cartan.a(i, j), d, unit).is_zero() {
                        return Err(format!("Serre relation for f{}, f{} fails", i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Σ_k (-1)^k [1-a_ij choose k]_{q_i} w(k) x^k y x^{1-a_ij-k}` where `q_i = v^d`.
pub(crate) fn serre_sum(x: &QvMatrix, y: &QvMatrix, aij: i64, d: u64, weight: impl Fn(usize) -> Scalar) -> QvMatrix {
    let top = (1 - aij) as u32;
    let mut acc = QvMatrix::zeros(x.dim());
    for k in 0..=top {
        let mut c = &q_binomial(d, top, k) * &weight(k as usize);
        if k % 2 == 1 {
            c = -&c;
        }
        let term = &(&x.pow(k) * y) * &x.pow(top - k);
        acc = &acc + &term.scale(&c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_commutator() {
        let rep = fundamental_rep(2, QRoot::new(1)).unwrap();
        let c = &(&rep.e[0] * &rep.f[0]) - &(&rep.f[0] * &rep.e[0]);
        assert_eq!(c, QvMatrix::diagonal(vec![Scalar::one(), Scalar::from_int(-1)]));
    }

    #[test]
    fn sl3_relations() {
        let rep = fundamental_rep(3, QRoot::new(2)).unwrap();
        let (e1, e2) = (&rep.e[0], &rep.e[1]);
        let two = &rep.root.q_int(1) + &rep.root.q_int(-1);
        let s = &(&(&(e1 * e1) * e2) - &(&(e1 * e2) * e1).scale(&two)) + &(&(e2 * e1) * e1);
        assert!(s.is_zero());
        assert!((&(e1 * &rep.f[1]) - &(&rep.f[1] * e1)).is_zero());
    }

    #[test]
    fn cartan_lifts_add_weights() {
        let b = RatMatrix::from_fn(1, |_, _| BigRational::from_integer(1.into()));
        let lifted = cartan_lift(2, &b, CartanLift::First);
        // basis (0,0,1): (h(0)+h(0))·h(1) = 2·(-1)
        assert_eq!(lifted.exponents()[1], BigRational::from_integer((-2).into()));
        let vv = cartan_on_vv(2, &b);
        assert_eq!(vv.exponents()[1], BigRational::from_integer((-1).into()));
    }
}

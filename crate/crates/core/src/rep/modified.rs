use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::fundamental::{cartan_on_v, serre_sum, FundamentalRep};
use crate::error::{Error, Result};
use crate::linalg::{DiagonalExponentMatrix, QvMatrix};
use crate::scalar::Scalar;
use crate::triples::{BdTriple, ExponentSolution};

/// Rescaled generators `E_i = X_i e_i`, `F_i = f_i Y_i` and the Cartan elements `R_i^±`.
#[derive(Clone, Debug)]
pub struct ModifiedRep {
    pub base: FundamentalRep,
    pub solution: ExponentSolution,
    pub x: Vec<QvMatrix>,
    pub y: Vec<QvMatrix>,
    pub e: Vec<QvMatrix>,
    pub f: Vec<QvMatrix>,
    pub r_plus: Vec<QvMatrix>,
    pub r_minus: Vec<QvMatrix>,
    pub r_plus_exp: Vec<DiagonalExponentMatrix>,
    pub r_minus_exp: Vec<DiagonalExponentMatrix>,
}

/// Result of one named relation check.
pub type RelationCheck = (&'static str, std::result::Result<(), String>);

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Builds the modified basis from exponent data.
pub fn modified_rep(base: &FundamentalRep, sol: &ExponentSolution) -> Result<ModifiedRep> {
    let n = base.n;
    let r = base.rank();
    let root = base.root;
    if !root.denominator().is_multiple_of(sol.denominator) {
        return Err(Error::ExponentNotIntegral {
            exponent: format!("solution denominator {}", sol.denominator),
            denominator: root.denominator(),
        });
    }
    let b = &sol.b;
    let a = |i: usize, j: usize| int(base.cartan.a(i, j));
    let mut out = ModifiedRep {
        base: base.clone(),
        solution: sol.clone(),
        x: Vec::new(),
        y: Vec::new(),
        e: Vec::new(),
        f: Vec::new(),
        r_plus: Vec::new(),
        r_minus: Vec::new(),
        r_plus_exp: Vec::new(),
        r_minus_exp: Vec::new(),
    };
    for i in 0..r {
        // X_i = q^{-(h b a)_i}, Y_i = q^{(h b̄ a)_i}
        let xc: Vec<BigRational> = (0..r)
            .map(|m| -(0..r).map(|nn| b.get(m, nn) * a(nn, i)).sum::<BigRational>())
            .collect();
        let yc: Vec<BigRational> = (0..r)
            .map(|m| (0..r).map(|nn| b.get(nn, m) * a(nn, i)).sum::<BigRational>())
            .collect();
        let x = cartan_on_v(n, &xc).materialize(root)?;
        let y = cartan_on_v(n, &yc).materialize(root)?;
        let di = int(base.cartan.d(i));
        let mut rp = Vec::with_capacity(r);
        let mut rm = Vec::with_capacity(r);
        for m in 0..r {
            let skew: BigRational = &xc[m] + &yc[m];
            let k = if m == i { di.clone() } else { BigRational::zero() };
            rp.push(&skew + &k);
            rm.push(&skew - &k);
        }
        let rp = cartan_on_v(n, &rp);
        let rm = cartan_on_v(n, &rm);
        out.e.push(&x * &base.e[i]);
        out.f.push(&base.f[i] * &y);
        out.x.push(x);
        out.y.push(y);
        out.r_plus.push(rp.materialize(root)?);
        out.r_minus.push(rm.materialize(root)?);
        out.r_plus_exp.push(rp);
        out.r_minus_exp.push(rm);
    }
    Ok(out)
}

impl ModifiedRep {
    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    fn q(&self, x: &BigRational) -> Scalar {
        self.base.root.q_pow(x).expect("session root covers all exponents")
    }

    fn a_skew(&self, i: usize, j: usize) -> BigRational {
        self.solution.a_skew.get(i, j).clone()
    }

    /// All relations of the modified basis, each under a descriptive name.
    pub fn relation_checks(&self, triple: &BdTriple) -> Vec<RelationCheck> {
        vec![
            ("r-factorization", self.check_r_factorization()),
            ("modified-commutator", self.check_commutator()),
            ("r-conjugation", self.check_conjugation()),
            ("modified-serre", self.check_serre()),
            ("q-commutator-serre", self.check_q_commutator_forms()),
            ("r-plus-matches-image", self.check_triple_condition(triple)),
        ]
    }

    /// `R_i^± = X_i K_i^{±1} Y_i` and `R_i^+ = K_i² R_i^-`.
    pub fn check_r_factorization(&self) -> std::result::Result<(), String> {
        for i in 0..self.rank() {
            let k = &self.base.k_mat[i];
            let kinv = &self.base.k_inv_mat[i];
            if self.r_plus[i] != &(&self.x[i] * k) * &self.y[i] {
                return Err(format!("R+ of root {} is not X K Y", i + 1));
            }
            if self.r_minus[i] != &(&self.x[i] * kinv) * &self.y[i] {
                return Err(format!("R- of root {} is not X K^-1 Y", i + 1));
            }
            if self.r_plus[i] != &(k * k) * &self.r_minus[i] {
                return Err(format!("R+ of root {} is not K^2 R-", i + 1));
            }
        }
        Ok(())
    }

    /// `[E_i, F_j] = δ_ij (R_i^+ - R_i^-)/(q^{d_i} - q^{-d_i})`.
    pub fn check_commutator(&self) -> std::result::Result<(), String> {
        let root = self.base.root;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let lhs = &(&self.e[i] * &self.f[j]) - &(&self.f[j] * &self.e[i]);
                let rhs = if i == j {
                    let di = self.base.cartan.d(i);
                    let den = (&root.q_int(di) - &root.q_int(-di)).inv().expect("q is generic");
                    (&self.r_plus[i] - &self.r_minus[i]).scale(&den)
                } else {
                    QvMatrix::zeros(self.n())
                };
                if lhs != rhs {
                    return Err(format!("[E{}, F{}] relation fails", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// `R_i^± E_j = q^{±a^s_ij + A_ij} E_j R_i^±` and the mirrored relation for `F_j`.
    pub fn check_conjugation(&self) -> std::result::Result<(), String> {
        let c = &self.base.cartan;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let s = int(c.sym(i, j));
                let a = self.a_skew(i, j);
                for (sign, rmat) in [(1, &self.r_plus[i]), (-1, &self.r_minus[i])] {
                    let ex = &s * BigInt::from(sign) + &a;
                    let lhs = rmat * &self.e[j];
                    let rhs = (&self.e[j] * rmat).scale(&self.q(&ex));
                    if lhs != rhs {
                        return Err(format!("R{} of root {} does not scale E{}", if sign > 0 { "+" } else { "-" }, i + 1, j + 1));
                    }
                    let lhs = rmat * &self.f[j];
                    let rhs = (&self.f[j] * rmat).scale(&self.q(&-ex));
                    if lhs != rhs {
                        return Err(format!("R{} of root {} does not scale F{}", if sign > 0 { "+" } else { "-" }, i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Serre relations dressed with `q^{∓k A_ij}`.
    pub fn check_serre(&self) -> std::result::Result<(), String> {
        let c = &self.base.cartan;
        let d = self.base.root.denominator();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if i == j {
                    continue;
                }
                let a = self.a_skew(i, j);
                let di = d * c.d(i) as u64;
                let we = |k: usize| self.q(&(-&a * BigInt::from(k)));
                let wf = |k: usize| self.q(&(&a * BigInt::from(k)));
                if !serre_sum(&self.e[i], &self.e[j], c.a(i, j), di, we).is_zero() {
                    return Err(format!("modified Serre relation for E{}, E{} fails", i + 1, j + 1));
                }
                if !serre_sum(&self.f[i], &self.f[j], c.a(i, j), di, wf).is_zero() {
                    return Err(format!("modified Serre relation for F{}, F{} fails", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// q-commutator forms of the Serre relations.
    pub fn check_q_commutator_forms(&self) -> std::result::Result<(), String> {
        let c = &self.base.cartan;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if i == j {
                    continue;
                }
                let a = self.a_skew(i, j);
                let (ei, ej, fi, fj) = (&self.e[i], &self.e[j], &self.f[i], &self.f[j]);
                match c.a(i, j) {
                    0 => {
                        if !ei.q_commutator(ej, &self.q(&a)).is_zero() || !fi.q_commutator(fj, &self.q(&-&a)).is_zero() {
                            return Err(format!("orthogonal roots {}, {} fail to q-commute", i + 1, j + 1));
                        }
                    }
                    -1 => {
                        let di = int(c.d(i));
                        let mu = self.q(&(&di + &a));
                        let nu = self.q(&(&di - &a));
                        let eij = ei.q_commutator(ej, &mu);
                        let fij = fi.q_commutator(fj, &nu);
                        let ok = eij.q_commutator(ei, &nu).is_zero()
                            && ej.q_commutator(&eij, &nu).is_zero()
                            && fij.q_commutator(fi, &mu).is_zero()
                            && fj.q_commutator(&fij, &mu).is_zero();
                        if !ok {
                            return Err(format!("nested q-commutators of {}, {} do not vanish", i + 1, j + 1));
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// `R^+` of each root in `Γ₁` equals `R^-` of its image.
    pub fn check_triple_condition(&self, triple: &BdTriple) -> std::result::Result<(), String> {
        for (&i, &ti) in triple.map() {
            if self.r_plus[i - 1] != self.r_minus[ti - 1] {
                return Err(format!("R+ of root {i} differs from R- of root {ti}"));
            }
        }
        Ok(())
    }
}

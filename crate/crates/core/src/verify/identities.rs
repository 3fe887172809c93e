use std::collections::BTreeMap;

use super::{compare, product, CheckReport};
use crate::error::{Error, Result};
use crate::linalg::QvMatrix;
use crate::rep::qexp_matrix;
use crate::scalar::{QRoot, Scalar};

fn relation(name: &str, context: &str, lhs: &QvMatrix, rhs: &QvMatrix, what: &str) -> Option<CheckReport> {
    let r = compare(name, context, lhs, rhs);
    (!r.passed()).then(|| r.with_detail(format!("instance relation fails: {what}")))
}

/// `exp_Q(u) exp_Q(v) = exp_Q(v) exp_Q([u,v]) exp_Q(u)` given `u[u,v] = Q[u,v]u` and `v[u,v] = Q^{-1}[u,v]v`.
pub fn check_pentagon(u: &QvMatrix, v: &QvMatrix, base: &Scalar, context: &str) -> CheckReport {
    let name = "pentagon";
    let w = &(u * v) - &(v * u);
    let binv = match base.inv() {
        Ok(b) => b,
        Err(e) => return CheckReport::fail(name, context, e.to_string()),
    };
    if let Some(r) = relation(name, context, &(u * &w), &(&w * u).scale(base), "u[u,v] = Q[u,v]u") {
        return r;
    }
    if let Some(r) = relation(name, context, &(v * &w), &(&w * v).scale(&binv), "v[u,v] = Q^-1[u,v]v") {
        return r;
    }
    let run = || -> Result<CheckReport> {
        let (eu, ev, ew) = (qexp_matrix(u, base)?, qexp_matrix(v, base)?, qexp_matrix(&w, base)?);
        Ok(compare(name, context, &(&eu * &ev), &product(&[&ev, &ew, &eu])))
    };
    run().unwrap_or_else(|e| CheckReport::fail(name, context, Error::InstanceRelationFailed(e.to_string()).to_string()))
}

/// `exp_Q(x + y) = exp_Q(y) exp_Q(x)` given `xy = Q yx`.
pub fn check_addition_law(x: &QvMatrix, y: &QvMatrix, base: &Scalar, context: &str) -> CheckReport {
    let name = "q-exp-addition";
    if let Some(r) = relation(name, context, &(x * y), &(y * x).scale(base), "xy = Q yx") {
        return r;
    }
    let run = || -> Result<CheckReport> {
        let lhs = qexp_matrix(&(x + y), base)?;
        let rhs = &qexp_matrix(y, base)? * &qexp_matrix(x, base)?;
        Ok(compare(name, context, &lhs, &rhs))
    };
    run().unwrap_or_else(|e| CheckReport::fail(name, context, Error::InstanceRelationFailed(e.to_string()).to_string()))
}

/// A matrix-valued combination `Σ_o C_o φ(v^o)` of values of `φ(z) = exp_Q(-z)` at `Q = v^period`.
///
/// Values whose exponents agree modulo the period are related by `φ(Qz) = (1 - (Q - 1)z)φ(z)`;
/// one representative per residue class is kept as an independent symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCombination {
    pub period: i64,
    pub terms: BTreeMap<i64, QvMatrix>,
}

impl PhiCombination {
    pub fn left_mul(&self, m: &QvMatrix) -> Self {
        self.map(|c| m * c)
    }

    pub fn right_mul(&self, m: &QvMatrix) -> Self {
        self.map(|c| c * m)
    }

    fn map(&self, f: impl Fn(&QvMatrix) -> QvMatrix) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(o, c)| (*o, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { period: self.period, terms }
    }
}

/// `φ(v^m)` as `s·φ(v^o)` with `o = m mod period`.
fn reduce(m: i64, period: i64, q_big: &Scalar) -> Result<(i64, Scalar)> {
    let o = m.rem_euclid(period);
    let steps = (m - o) / period;
    let qm1 = q_big - &Scalar::one();
    let factor = |e: i64| &Scalar::one() - &(&qm1 * &Scalar::v_pow(e));
    let mut s = Scalar::one();
    if steps >= 0 {
        for j in 0..steps {
            s = &s * &factor(o + j * period);
        }
    } else {
        for j in steps..0 {
            s = s.checked_div(&factor(o + j * period))?;
        }
    }
    Ok((o, s))
}

/// `exp_Q(-R)` for a diagonal `R` whose entries are powers of `v`, with `Q = v^period`.
pub fn phi_diagonal(r: &QvMatrix, period: i64) -> Result<PhiCombination> {
    if !r.is_diagonal() {
        return Err(Error::InstanceRelationFailed("Cartan element is not diagonal".into()));
    }
    let q_big = Scalar::v_pow(period);
    let dim = r.dim();
    let mut terms: BTreeMap<i64, QvMatrix> = BTreeMap::new();
    for k in 0..dim {
        let m = r
            .get(k, k)
            .as_unit_monomial()
            .ok_or_else(|| Error::InstanceRelationFailed(format!("diagonal entry {k} is not a power of v")))?;
        let (o, s) = reduce(m, period, &q_big)?;
        terms.entry(o).or_insert_with(|| QvMatrix::zeros(dim)).set(k, k, s);
    }
    Ok(PhiCombination { period, terms })
}

/// `exp_Q(E) exp_Q(-R⁺) exp_Q(F) = exp_Q(F) exp_Q(-R⁻) exp_Q(E)` with `Q = q²`.
///
/// Requires `[E,F] = R⁺ - R⁻`, `[R⁺,R⁻] = 0`, `R^±E = Q^{±1}ER^±`, `R^±F = Q^{∓1}FR^±`.
pub fn check_efr_identity(e: &QvMatrix, f: &QvMatrix, rp: &QvMatrix, rm: &QvMatrix, root: QRoot, context: &str) -> CheckReport {
    let name = "efr-identity";
    let q2 = root.q_int(2);
    let q2inv = root.q_int(-2);
    let checks = [
        (&(e * f) - &(f * e), rp - rm, "[E,F] = R+ - R-"),
        (rp * rm, rm * rp, "[R+,R-] = 0"),
        (rp * e, (e * rp).scale(&q2), "R+E = q^2 ER+"),
        (rm * e, (e * rm).scale(&q2inv), "R-E = q^-2 ER-"),
        (rp * f, (f * rp).scale(&q2inv), "R+F = q^-2 FR+"),
        (rm * f, (f * rm).scale(&q2), "R-F = q^2 FR-"),
    ];
    for (l, r, what) in &checks {
        if let Some(rep) = relation(name, context, l, r, what) {
            return rep;
        }
    }
    let period = 2 * root.denominator() as i64;
    let run = || -> Result<CheckReport> {
        let (ee, ef) = (qexp_matrix(e, &q2)?, qexp_matrix(f, &q2)?);
        let lhs = phi_diagonal(rp, period)?.left_mul(&ee).right_mul(&ef);
        let rhs = phi_diagonal(rm, period)?.left_mul(&ef).right_mul(&ee);
        let orbits: std::collections::BTreeSet<i64> = lhs.terms.keys().chain(rhs.terms.keys()).copied().collect();
        let zero = QvMatrix::zeros(e.dim());
        for o in orbits {
            let r = compare(name, context, lhs.terms.get(&o).unwrap_or(&zero), rhs.terms.get(&o).unwrap_or(&zero));
            if !r.passed() {
                return Ok(r.with_detail(format!("coefficient of phi(v^{o}) differs")));
            }
        }
        Ok(CheckReport::pass(name, context))
    };
    run().unwrap_or_else(|e| CheckReport::fail(name, context, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_instances_pass() {
        let z = QvMatrix::zeros(3);
        let q = Scalar::v_pow(2);
        assert!(check_pentagon(&z, &z, &q, "zero").passed());
        let r = QvMatrix::identity(3);
        assert!(check_efr_identity(&z, &z, &r, &r, QRoot::new(1), "zero").passed());
    }

    #[test]
    fn phi_reduction_is_consistent() {
        // φ(Qz) = (1 - (Q - 1)z)φ(z) at z = v^1, Q = v^4
        let (o, s) = reduce(5, 4, &Scalar::v_pow(4)).unwrap();
        assert_eq!(o, 1);
        assert_eq!(s, &Scalar::one() - &(&(&Scalar::v_pow(4) - &Scalar::one()) * &Scalar::v_pow(1)));
        let (o2, s2) = reduce(-3, 4, &Scalar::v_pow(4)).unwrap();
        assert_eq!(o2, 1);
        let back = &s2 * &(&Scalar::one() - &(&(&Scalar::v_pow(4) - &Scalar::one()) * &Scalar::v_pow(-3)));
        assert!(back.is_one());
    }

    #[test]
    fn broken_relation_is_reported() {
        let u = QvMatrix::unit(3, 0, 1);
        let v = QvMatrix::unit(3, 1, 2);
        // [u, v] = E_02; u·w = 0 = w·u, v·w = 0 = w·v, so relations hold for any Q
        assert!(check_pentagon(&u, &v, &Scalar::v_pow(1), "units").passed());
        let x = QvMatrix::unit(3, 0, 1);
        let y = QvMatrix::unit(3, 1, 2);
        // xy = E_02, yx = 0
        let r = check_addition_law(&x, &y, &Scalar::v_pow(1), "units");
        assert!(!r.passed());
    }
}

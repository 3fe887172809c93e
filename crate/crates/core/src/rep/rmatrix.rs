use std::collections::BTreeMap;

use super::cartan_weyl::CartanWeylFamily;
use super::fundamental::cartan_on_vv;
use super::modified::ModifiedRep;
use super::twist::{TwistExpression, TwistFactor};
use crate::error::{Error, Result};
use crate::linalg::{solve_linear, DiagonalExponentMatrix, QvMatrix, RatMatrix};
use crate::roots::Root;
use crate::scalar::Scalar;
use crate::triples::{symmetrized_cartan, tau_on_root, validate_triple, BdTriple};

/// Normalization constants `a_β` of the root-vector exponentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootConstants {
    pub values: BTreeMap<Root, Scalar>,
}

impl RootConstants {
    pub fn get(&self, r: &Root) -> Result<&Scalar> {
        self.values.get(r).ok_or(Error::CalibrationMissing)
    }
}

/// `-(a^{(s)})^{-1}`, the exponent matrix of `K^(0)`.
pub fn k0_exponents(mrep: &ModifiedRep) -> RatMatrix {
    let s = symmetrized_cartan(&mrep.base.cartan);
    -&s.invert().expect("symmetrized Cartan matrix is invertible")
}

/// Coproduct and opposite coproduct of the unmodified generators on `V⊗V`.
fn intertwined_pairs(mrep: &ModifiedRep) -> Vec<(QvMatrix, QvMatrix)> {
    let base = &mrep.base;
    let id = QvMatrix::identity(base.n);
    let mut out = Vec::new();
    for i in 0..base.rank() {
        let (e, f, k, ki) = (&base.e[i], &base.f[i], &base.k_mat[i], &base.k_inv_mat[i]);
        out.push((&e.kron(k) + &id.kron(e), &k.kron(e) + &e.kron(&id)));
        out.push((&f.kron(&id) + &ki.kron(f), &id.kron(f) + &f.kron(ki)));
    }
    out
}

/// Checks `Δ(x)·ℛ^{-1} = ℛ^{-1}·Δ^op(x)` for all generators; returns the first failing generator.
pub fn check_intertwiner(mrep: &ModifiedRep, r_inv: &QvMatrix) -> std::result::Result<(), String> {
    for (idx, (x, xo)) in intertwined_pairs(mrep).iter().enumerate() {
        if (x * r_inv) != (r_inv * xo) {
            let g = if idx % 2 == 0 { "e" } else { "f" };
            return Err(format!("R does not intertwine the coproduct of {g}{}", idx / 2 + 1));
        }
    }
    Ok(())
}

/// Solves for all `a_β` from the intertwiner property, linearized in each exponential.
pub fn calibrate_constants(mrep: &ModifiedRep, family: &CartanWeylFamily) -> Result<RootConstants> {
    let n = mrep.n();
    let root = mrep.base.root;
    let lambda = root.lambda();
    let kb = cartan_on_vv(n, &mrep.solution.b);
    let k = kb.materialize(root)?;
    let kinv = kb.inverse().materialize(root)?;
    let k0 = cartan_on_vv(n, &k0_exponents(mrep)).materialize(root)?;
    let tail = &k * &k0;
    let roots = family.order().roots().to_vec();
    let terms: Vec<QvMatrix> = roots
        .iter()
        .map(|b| (&(&kinv * &family.e(b).kron(family.f(b))) * &tail).scale(&-&lambda))
        .collect();
    let mut rows = Vec::new();
    for (x, xo) in intertwined_pairs(mrep) {
        let c0 = &(&x * &k0) - &(&k0 * &xo);
        let cs: Vec<QvMatrix> = terms.iter().map(|m| &(&x * m) - &(m * &xo)).collect();
        for p in 0..n * n {
            for q in 0..n * n {
                let coeffs: Vec<Scalar> = cs.iter().map(|c| c.get(p, q).clone()).collect();
                if coeffs.iter().all(|c| c.is_zero()) && c0.get(p, q).is_zero() {
                    continue;
                }
                rows.push((coeffs, -c0.get(p, q)));
            }
        }
    }
    let sol = solve_linear(&rows, roots.len()).ok_or_else(|| Error::NoSolution("intertwiner system is inconsistent".into()))?;
    if !sol.free_vars.is_empty() {
        let free: Vec<String> = sol.free_vars.iter().map(|&i| roots[i].to_string()).collect();
        return Err(Error::NoSolution(format!("constants not determined for {}", free.join(", "))));
    }
    let consts = RootConstants {
        values: roots.iter().copied().zip(sol.particular).collect(),
    };
    for r in roots.iter().filter(|r| r.is_simple()) {
        if !consts.values[r].is_one() {
            return Err(Error::NoSolution(format!("simple root {r} calibrated to {}", consts.values[r])));
        }
    }
    let r_inv = standard_r_expression(mrep, family, &consts)?.evaluate(root, family, family)?;
    check_intertwiner(mrep, &r_inv).map_err(Error::NoSolution)?;
    Ok(consts)
}

/// `∏_β exp_{q_β²}(-λ a_β E_β⊗F_β)` in the normal order.
pub fn root_product_expression(mrep: &ModifiedRep, family: &CartanWeylFamily, consts: &RootConstants) -> Result<TwistExpression> {
    let lambda = mrep.base.root.lambda();
    let base = mrep.base.root.q_int(2);
    let factors = family
        .order()
        .roots()
        .iter()
        .map(|b| {
            Ok(TwistFactor::Exp {
                root: *b,
                target: *b,
                coeff: &-&lambda * consts.get(b)?,
                base: base.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistExpression::new(mrep.n(), factors))
}

/// `ℛ^{-1} = K^{-1} · ∏_β exp(-λ a_β E_β⊗F_β) · K · K^(0)`.
pub fn standard_r_expression(mrep: &ModifiedRep, family: &CartanWeylFamily, consts: &RootConstants) -> Result<TwistExpression> {
    let n = mrep.n();
    let b = &mrep.solution.b;
    let mut factors = vec![TwistFactor::Cartan { exponents: -b }];
    factors.extend(root_product_expression(mrep, family, consts)?.factors);
    factors.push(TwistFactor::Cartan { exponents: b.clone() });
    factors.push(TwistFactor::Cartan { exponents: k0_exponents(mrep) });
    Ok(TwistExpression::new(n, factors))
}

/// The standard R-matrix on `V⊗V`.
#[derive(Clone, Debug)]
pub struct StandardR {
    pub r: QvMatrix,
    pub r_inv: QvMatrix,
    pub k0: DiagonalExponentMatrix,
    /// Expression for `ℛ^{-1}`.
    pub expr: TwistExpression,
}

pub fn standard_r(mrep: &ModifiedRep, family: &CartanWeylFamily, consts: &RootConstants) -> Result<StandardR> {
    let expr = standard_r_expression(mrep, family, consts)?;
    let r_inv = expr.evaluate(mrep.base.root, family, family)?;
    let r = r_inv.invert()?;
    Ok(StandardR {
        r,
        r_inv,
        k0: cartan_on_vv(mrep.n(), &k0_exponents(mrep)),
        expr,
    })
}

/// `F^(k)`: exponentials of the roots on which `τ^k` is defined, in the normal order.
pub fn twist_factor(
    mrep: &ModifiedRep,
    family: &CartanWeylFamily,
    consts: &RootConstants,
    triple: &BdTriple,
    k: usize,
) -> Result<TwistExpression> {
    let degree = validate_triple(triple)?.degree;
    if k == 0 || k > degree {
        return Err(Error::OutOfRange { k, degree });
    }
    let lambda = mrep.base.root.lambda();
    let base = mrep.base.root.q_int(2);
    let mut factors = Vec::new();
    for b in family.order().roots() {
        if let Some(t) = tau_on_root(triple, k, b) {
            factors.push(TwistFactor::Exp {
                root: *b,
                target: t,
                coeff: &-&lambda * consts.get(b)?,
                base: base.clone(),
            });
        }
    }
    Ok(TwistExpression::new(mrep.n(), factors))
}

/// `F = F^(N) ··· F^(1) · K` in symbolic and evaluated form.
#[derive(Clone, Debug)]
pub struct FullTwist {
    pub expr: TwistExpression,
    /// `F^(k)` at index `k - 1`.
    pub factors: Vec<TwistExpression>,
    /// `F^(k)` evaluated on `V⊗V`, at index `k - 1`.
    pub factor_matrices: Vec<QvMatrix>,
    pub f: QvMatrix,
    pub k: QvMatrix,
}

impl FullTwist {
    /// `F̃ = F^(N) ··· F^(1)`, the twist without the Cartan factor.
    pub fn without_cartan(&self) -> TwistExpression {
        let mut e = self.expr.clone();
        e.factors.retain(|f| matches!(f, TwistFactor::Exp { .. }));
        e
    }
}

pub fn full_twist(mrep: &ModifiedRep, family: &CartanWeylFamily, consts: &RootConstants, triple: &BdTriple) -> Result<FullTwist> {
    let n = mrep.n();
    let root = mrep.base.root;
    let degree = validate_triple(triple)?.degree;
    let factors = (1..=degree)
        .map(|k| twist_factor(mrep, family, consts, triple, k))
        .collect::<Result<Vec<_>>>()?;
    let factor_matrices = factors
        .iter()
        .map(|e| e.evaluate(root, family, family))
        .collect::<Result<Vec<_>>>()?;
    let mut expr = TwistExpression::identity(n);
    for f in factors.iter().rev() {
        expr = expr.then(f);
    }
    let b = &mrep.solution.b;
    if !b.is_zero() {
        expr.factors.push(TwistFactor::Cartan { exponents: b.clone() });
    }
    let f = expr.evaluate(root, family, family)?;
    let k = cartan_on_vv(n, b).materialize(root)?;
    Ok(FullTwist {
        expr,
        factors,
        factor_matrices,
        f,
        k,
    })
}

/// `R = F₂₁ · ℛ · F^{-1}`.
pub fn twisted_r(f: &QvMatrix, r_std: &QvMatrix, n: usize) -> Result<QvMatrix> {
    let finv = f.invert()?;
    Ok(&(&f.swap_legs(n) * r_std) * &finv)
}


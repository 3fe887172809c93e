use super::prescreen::Prescreen;
use super::{compare, errored, product, CheckReport};
use crate::linalg::{Legs, QvMatrix, RatMatrix};
use crate::rep::{
    check_intertwiner, classical_r, coproduct_family, cybe_defect, root_product_expression, symmetric_part, twist_factor, twisted_r,
    CartanWeylFamily, Coproduct, Session, Slot, TwistExpression, TwistFactor,
};
use crate::scalar::{QRoot, Scalar};

fn context(s: &Session) -> String {
    let mut c = s.triple.to_string();
    if !s.config.gauge.is_canonical() {
        c.push_str(" gauged");
    }
    c
}

fn isqrt(m: usize) -> Option<usize> {
    let n = (m as f64).sqrt().round() as usize;
    (n * n == m).then_some(n)
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on `V⊗V⊗V`.
pub fn check_qybe(r: &QvMatrix, context: &str, prescreen: Option<&mut Prescreen>) -> CheckReport {
    let name = "qybe";
    let Some(n) = isqrt(r.dim()) else {
        return CheckReport::fail(name, context, format!("dimension {} is not a perfect square", r.dim()));
    };
    let (r12, r13, r23) = (r.leg(n, Legs::L12), r.leg(n, Legs::L13), r.leg(n, Legs::L23));
    if let Some(p) = prescreen {
        if let Some(w) = p.screen(&[&r12, &r13, &r23], &[&r23, &r13, &r12]) {
            return CheckReport {
                witness: Some(w),
                ..CheckReport::fail(name, context, "random evaluation differs")
            };
        }
    }
    compare(name, context, &product(&[&r12, &r13, &r23]), &product(&[&r23, &r13, &r12]))
}

/// `F₁₂·(Δ⊗id)F = F₂₃·(id⊗Δ)F` for an expression, given the coproduct images of the root vectors.
pub fn check_cocycle_expr(
    name: &str,
    context: &str,
    expr: &TwistExpression,
    root: QRoot,
    family: &CartanWeylFamily,
    lifted: &CartanWeylFamily,
    prescreen: Option<&mut Prescreen>,
) -> CheckReport {
    let n = expr.n;
    let run = || -> crate::Result<CheckReport> {
        let f = expr.evaluate(root, family, family)?;
        let left = expr.coproduct_lift(root, family, lifted, Slot::First)?;
        let right = expr.coproduct_lift(root, family, lifted, Slot::Second)?;
        let (f12, f23) = (f.leg(n, Legs::L12), f.leg(n, Legs::L23));
        if let Some(p) = prescreen {
            if let Some(w) = p.screen(&[&f12, &left], &[&f23, &right]) {
                return Ok(CheckReport {
                    witness: Some(w),
                    ..CheckReport::fail(name, context, "random evaluation differs")
                });
            }
        }
        Ok(compare(name, context, &(&f12 * &left), &(&f23 * &right)))
    };
    run().unwrap_or_else(|e| errored(name, context, &e))
}

/// Cocycle condition of the full twist under `Δ`, or of the twist without `K` under `Δ̃`.
pub fn check_cocycle(s: &Session, coproduct: Coproduct, prescreen: Option<&mut Prescreen>) -> CheckReport {
    let (name, expr) = match coproduct {
        Coproduct::Standard => ("cocycle-standard", s.twist.expr.clone()),
        Coproduct::Twisted => ("cocycle-twisted", s.twist.without_cartan()),
    };
    let ctx = context(s);
    match coproduct_family(&s.mrep, &s.family.recipe, coproduct) {
        Ok(lifted) => check_cocycle_expr(name, &ctx, &expr, s.root, &s.family, &lifted, prescreen),
        Err(e) => errored(name, &ctx, &e),
    }
}

/// The Cartan factor `K` alone satisfies the cocycle condition.
pub fn check_cartan_cocycle(s: &Session) -> CheckReport {
    let expr = TwistExpression::new(s.n(), vec![TwistFactor::Cartan { exponents: s.solution.b.clone() }]);
    let ctx = context(s);
    match coproduct_family(&s.mrep, &s.family.recipe, Coproduct::Standard) {
        Ok(lifted) => check_cocycle_expr("cartan-cocycle", &ctx, &expr, s.root, &s.family, &lifted, None),
        Err(e) => errored("cartan-cocycle", &ctx, &e),
    }
}

/// The scalar `c` with `tr(P·R) = c(q·n(n+1)/2 - q^{-1}·n(n-1)/2)`.
pub fn hecke_scalar(r: &QvMatrix, n: usize, root: QRoot) -> Option<Scalar> {
    let rhat = &QvMatrix::flip(n) * r;
    let mut tr = Scalar::zero();
    for i in 0..rhat.dim() {
        tr = &tr + rhat.get(i, i);
    }
    let nn = n as i64;
    let den = &(&root.q_int(1) * &Scalar::from_int(nn * (nn + 1) / 2)) - &(&root.q_int(-1) * &Scalar::from_int(nn * (nn - 1) / 2));
    tr.checked_div(&den).ok()
}

/// `(R̂ - c·q)(R̂ + c·q^{-1}) = 0` with `R̂ = P·R`.
pub fn check_hecke(r: &QvMatrix, n: usize, root: QRoot, context: &str) -> CheckReport {
    let name = "hecke";
    let Some(c) = hecke_scalar(r, n, root) else {
        return CheckReport::fail(name, context, "trace normalization is singular");
    };
    let rhat = &QvMatrix::flip(n) * r;
    let id = QvMatrix::identity(n * n);
    let a = &rhat - &id.scale(&(&c * &root.q_int(1)));
    let b = &rhat + &id.scale(&(&c * &root.q_int(-1)));
    compare(name, context, &(&a * &b), &QvMatrix::zeros(n * n)).with_detail(format!("c = {c}"))
}

/// `ℛ` intertwines `Δ` and `Δ^op` on all Chevalley generators.
pub fn check_intertwiner_report(s: &Session) -> CheckReport {
    let ctx = context(s);
    match check_intertwiner(&s.mrep, &s.standard.r_inv) {
        Ok(()) => CheckReport::pass("intertwiner", &ctx),
        Err(m) => CheckReport::fail("intertwiner", &ctx, m),
    }
}

/// CYBE for `r = dR/dħ` at `ħ = 0`, and `r + r₂₁` against the value for the empty triple.
pub fn check_classical(s: &Session, empty_symmetric: &RatMatrix) -> CheckReport {
    let name = "classical";
    let ctx = context(s);
    let n = s.n();
    let r = match classical_r(&s.r, s.denominator()) {
        Ok(r) => r,
        Err(e) => return errored(name, &ctx, &e),
    };
    let cybe = compare(name, &ctx, &cybe_defect(&r, n), &RatMatrix::zeros(n * n * n));
    if !cybe.passed() {
        return cybe.with_detail("classical Yang-Baxter equation fails");
    }
    let sym = compare(name, &ctx, &symmetric_part(&r, n), empty_symmetric);
    if !sym.passed() {
        return sym.with_detail("r + r21 differs from the standard value");
    }
    CheckReport::pass(name, &ctx)
}

/// Relations of the fundamental and modified generators, nilpotency of root vectors and the twisted coproduct form.
pub fn check_modified_relations(s: &Session) -> CheckReport {
    let name = "modified-relations";
    let ctx = context(s);
    if let Err(m) = s.mrep.base.check_relations() {
        return CheckReport::fail(name, &ctx, m);
    }
    for (rel, res) in s.mrep.relation_checks(&s.triple) {
        if let Err(m) = res {
            return CheckReport::fail(name, &ctx, format!("{rel}: {m}"));
        }
    }
    if let Err(m) = s.family.check_square_zero() {
        return CheckReport::fail(name, &ctx, m);
    }
    match twisted_coproduct_form(s) {
        Ok(None) => CheckReport::pass(name, &ctx),
        Ok(Some(r)) => r,
        Err(e) => errored(name, &ctx, &e),
    }
}

/// `Δ̃(E_i) = E_i⊗R_i^+ + 1⊗E_i` and `Δ̃(F_i) = F_i⊗1 + R_i^-⊗F_i`.
fn twisted_coproduct_form(s: &Session) -> crate::Result<Option<CheckReport>> {
    let name = "modified-relations";
    let ctx = context(s);
    let (de, df) = crate::rep::coproduct_generators(&s.mrep, Coproduct::Twisted)?;
    let id = QvMatrix::identity(s.n());
    let m = &s.mrep;
    for i in 0..m.rank() {
        let e = &m.e[i].kron(&m.r_plus[i]) + &id.kron(&m.e[i]);
        let f = &m.f[i].kron(&id) + &m.r_minus[i].kron(&m.f[i]);
        for (got, want, g) in [(&de[i], &e, "E"), (&df[i], &f, "F")] {
            let r = compare(name, &ctx, got, want);
            if !r.passed() {
                return Ok(Some(r.with_detail(format!("twisted coproduct of {g}{} has the wrong form", i + 1))));
            }
        }
    }
    Ok(None)
}

/// `K ℛ_std^{-1} (K^(0))^{-1} K^{-1}` equals the ordered product of root exponentials,
/// and shifting its targets by `τ^k` gives `F^(k)`.
pub fn check_twist_reformulation(s: &Session) -> CheckReport {
    let name = "twist-reformulation";
    let ctx = context(s);
    let run = || -> crate::Result<CheckReport> {
        let std = s.standard_session()?;
        let k = &s.twist.k;
        let kinv = k.invert()?;
        let k0inv = s.standard.k0.inverse().materialize(s.root)?;
        let lhs = product(&[k, &std.standard.r_inv, &k0inv, &kinv]);
        let expr = root_product_expression(&s.mrep, &s.family, &s.consts)?;
        let rhs = expr.evaluate(s.root, &s.family, &s.family)?;
        let r = compare(name, &ctx, &lhs, &rhs);
        if !r.passed() {
            return Ok(r.with_detail("product form of the standard R-matrix differs"));
        }
        for k in 1..=s.degree() {
            let shifted = expr.shift_targets(&s.triple, k);
            if shifted != twist_factor(&s.mrep, &s.family, &s.consts, &s.triple, k)? {
                return Ok(CheckReport::fail(name, &ctx, format!("shifted product differs from factor {k}")));
            }
        }
        Ok(CheckReport::pass(name, &ctx))
    };
    run().unwrap_or_else(|e| errored(name, &ctx, &e))
}

/// Multiplying any single exponential coefficient of `F` by `q` must break QYBE or the cocycle condition.
pub fn check_mutation(s: &Session, seed: u64) -> CheckReport {
    let name = "mutation";
    let ctx = context(s);
    let count = s.twist.expr.exp_factors().count();
    if count == 0 {
        return CheckReport::fail(name, &ctx, "twist has no coefficients to perturb");
    }
    let run = || -> crate::Result<CheckReport> {
        let lifted = coproduct_family(&s.mrep, &s.family.recipe, Coproduct::Standard)?;
        let q = s.root.q_int(1);
        let mut caught = Vec::new();
        for i in 0..count {
            let mutated = s.twist.expr.perturb(i, &q)?;
            let f = mutated.evaluate(s.root, &s.family, &s.family)?;
            let r = twisted_r(&f, &s.standard.r, s.n())?;
            let mut p = Prescreen::new(seed.wrapping_add(i as u64));
            let qybe = check_qybe(&r, &ctx, Some(&mut p));
            let report = if qybe.passed() {
                check_cocycle_expr("cocycle-standard", &ctx, &mutated, s.root, &s.family, &lifted, Some(&mut p))
            } else {
                qybe
            };
            if report.passed() || report.witness.is_none() {
                let mut out = CheckReport::fail(name, &ctx, format!("perturbing coefficient {i} went undetected"));
                out.witness = report.witness;
                return Ok(out);
            }
            caught.push(format!("{i}:{}", report.name));
        }
        Ok(CheckReport::pass(name, &ctx).with_detail(format!("{count} perturbations detected ({})", caught.join(", "))))
    };
    run().unwrap_or_else(|e| errored(name, &ctx, &e))
}

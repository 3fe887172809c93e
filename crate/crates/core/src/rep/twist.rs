use std::fmt;

use super::cartan_weyl::{CartanWeylFamily, CartanWeylRecipe};
use super::fundamental::{cartan_lift, cartan_on_vv, CartanLift};
use super::modified::ModifiedRep;
use super::qexp::qexp_matrix;
use crate::error::{Error, Result};
use crate::linalg::{QvMatrix, RatMatrix};
use crate::roots::Root;
use crate::scalar::{QRoot, Scalar};
use crate::triples::{tau_on_root, BdTriple};

/// One factor of a twist expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistFactor {
    /// `exp_base(coeff · E_root ⊗ F_target)`.
    Exp { root: Root, target: Root, coeff: Scalar, base: Scalar },
    /// `q^{Σ c_ij h_i⊗h_j}`.
    Cartan { exponents: RatMatrix },
}

/// Ordered product of factors on `V⊗V`, kept symbolic so that coproducts can be applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistExpression {
    pub n: usize,
    pub factors: Vec<TwistFactor>,
}

/// Which tensor slot of a two-leg expression a coproduct acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    First,
    Second,
}

/// Choice of comultiplication on the modified generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coproduct {
    /// `Δ(e) = e⊗K + 1⊗e`, `Δ(f) = f⊗1 + K^{-1}⊗f`.
    Standard,
    /// `Δ̃ = K Δ K^{-1}` with `K = q^{Σ b h⊗h}`.
    Twisted,
}

impl TwistExpression {
    pub fn new(n: usize, factors: Vec<TwistFactor>) -> Self {
        Self { n, factors }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exp_factors(&self) -> impl Iterator<Item = &TwistFactor> {
        self.factors.iter().filter(|f| matches!(f, TwistFactor::Exp { .. }))
    }

    /// `self · other`.
    pub fn then(&self, other: &TwistExpression) -> TwistExpression {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new(self.n, factors)
    }

    /// Evaluates on `V⊗V`, reading `E` from `slot1` and `F` from `slot2`.
    pub fn evaluate(&self, root: QRoot, slot1: &CartanWeylFamily, slot2: &CartanWeylFamily) -> Result<QvMatrix> {
        let mut acc = QvMatrix::identity(self.n * self.n);
        for factor in &self.factors {
            let m = match factor {
                TwistFactor::Exp { root: r, target, coeff, base } => {
                    let u = slot1.e(r).kron(slot2.f(target)).scale(coeff);
                    qexp_matrix(&u, base)?
                }
                TwistFactor::Cartan { exponents } => cartan_on_vv(self.n, exponents).materialize(root)?,
            };
            acc = &acc * &m;
        }
        Ok(acc)
    }

    /// Applies `Δ⊗id` (slot 1) or `id⊗Δ` (slot 2) and evaluates on `V⊗V⊗V`.
    ///
    /// `lifted` holds the coproduct images of the root vectors on `V⊗V`.
    pub fn coproduct_lift(
        &self,
        root: QRoot,
        family: &CartanWeylFamily,
        lifted: &CartanWeylFamily,
        slot: Slot,
    ) -> Result<QvMatrix> {
        let n = self.n;
        let mut acc = QvMatrix::identity(n * n * n);
        for factor in &self.factors {
            let m = match factor {
                TwistFactor::Exp { root: r, target, coeff, base } => {
                    let u = match slot {
                        Slot::First => lifted.e(r).kron(family.f(target)),
                        Slot::Second => family.e(r).kron(lifted.f(target)),
                    };
                    qexp_matrix(&u.scale(coeff), base)?
                }
                TwistFactor::Cartan { exponents } => {
                    let lift = match slot {
                        Slot::First => CartanLift::First,
                        Slot::Second => CartanLift::Second,
                    };
                    cartan_lift(n, exponents, lift).materialize(root)?
                }
            };
            acc = &acc * &m;
        }
        Ok(acc)
    }

    /// Replaces each target `β` by `τ^k(β)`, dropping factors where it is undefined.
    ///
    /// Cartan factors are dropped as well.
    pub fn shift_targets(&self, triple: &BdTriple, k: usize) -> TwistExpression {
        let factors = self
            .factors
            .iter()
            .filter_map(|f| match f {
                TwistFactor::Exp { root, target, coeff, base } => tau_on_root(triple, k, target).map(|t| TwistFactor::Exp {
                    root: *root,
                    target: t,
                    coeff: coeff.clone(),
                    base: base.clone(),
                }),
                TwistFactor::Cartan { .. } => None,
            })
            .collect();
        Self::new(self.n, factors)
    }

    /// Multiplies the coefficient of the `index`-th exponential factor by `by`.
    pub fn perturb(&self, index: usize, by: &Scalar) -> Result<TwistExpression> {
        let mut out = self.clone();
        let f = out
            .factors
            .iter_mut()
            .filter(|f| matches!(f, TwistFactor::Exp { .. }))
            .nth(index)
            .ok_or(Error::IndexOutOfRange { index, rank: self.exp_factors().count() })?;
        if let TwistFactor::Exp { coeff, .. } = f {
            *coeff = &*coeff * by;
        }
        Ok(out)
    }
}

impl fmt::Display for TwistExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            match factor {
                TwistFactor::Exp { root, target, coeff, base } => {
                    write!(f, "exp_{{{base}}}(({coeff}) E{root}⊗F{target})")?
                }
                TwistFactor::Cartan { exponents } => {
                    let rows: Vec<String> = (0..exponents.dim())
                        .map(|i| {
                            let r: Vec<String> = exponents.row(i).iter().map(|x| x.to_string()).collect();
                            r.join(",")
                        })
                        .collect();
                    write!(f, "q^{{[{}]}}", rows.join(";"))?
                }
            }
        }
        Ok(())
    }
}

/// Coproduct images `Δ(E_i)`, `Δ(F_i)` of the modified generators on `V⊗V`.
pub fn coproduct_generators(mrep: &ModifiedRep, coproduct: Coproduct) -> Result<(Vec<QvMatrix>, Vec<QvMatrix>)> {
    let n = mrep.n();
    let base = &mrep.base;
    let id = QvMatrix::identity(n);
    let conj = match coproduct {
        Coproduct::Standard => None,
        Coproduct::Twisted => {
            let k = cartan_on_vv(n, &mrep.solution.b);
            Some((k.materialize(base.root)?, k.inverse().materialize(base.root)?))
        }
    };
    let mut de = Vec::new();
    let mut df = Vec::new();
    for i in 0..mrep.rank() {
        let e = &base.e[i].kron(&base.k_mat[i]) + &id.kron(&base.e[i]);
        let f = &base.f[i].kron(&id) + &base.k_inv_mat[i].kron(&base.f[i]);
        let mut e = &mrep.x[i].kron(&mrep.x[i]) * &e;
        let mut f = &f * &mrep.y[i].kron(&mrep.y[i]);
        if let Some((k, kinv)) = &conj {
            e = &(k * &e) * kinv;
            f = &(k * &f) * kinv;
        }
        de.push(e);
        df.push(f);
    }
    Ok((de, df))
}

/// Coproduct images of all root vectors, by the same q-commutator recursion.
pub fn coproduct_family(mrep: &ModifiedRep, recipe: &CartanWeylRecipe, coproduct: Coproduct) -> Result<CartanWeylFamily> {
    let (de, df) = coproduct_generators(mrep, coproduct)?;
    Ok(recipe.apply(&de, &df))
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::modified::ModifiedRep;
use crate::error::{Error, Result};
use crate::linalg::QvMatrix;
use crate::roots::{minimal_interval, NormalOrder, Root};
use crate::scalar::Scalar;

/// One q-commutator step `γ = α + β`: `E_γ = E_α E_β - μ E_β E_α`, `F_γ = F_α F_β - ν F_β F_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeStep {
    pub alpha: Root,
    pub beta: Root,
    pub mu: Scalar,
    pub nu: Scalar,
}

/// The q-commutator recipe for every composite root, independent of any representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanWeylRecipe {
    pub order: NormalOrder,
    pub steps: BTreeMap<Root, CompositeStep>,
}

impl CartanWeylRecipe {
    /// Builds the recipe for the skew matrix `A` stored in the modified representation.
    pub fn new(mrep: &ModifiedRep, order: &NormalOrder) -> Result<Self> {
        if !order.is_convex() {
            return Err(Error::Invariant("normal order is not convex".into()));
        }
        let n = mrep.n();
        let cartan = &mrep.base.cartan;
        let a = &mrep.solution.a_skew;
        let mut steps = BTreeMap::new();
        for gamma in order.roots().iter().filter(|g| !g.is_simple()) {
            let (alpha, beta) = minimal_interval(order, gamma)?;
            let (ca, cb) = (alpha.coords(n), beta.coords(n));
            let inner = BigRational::from_integer(BigInt::from(cartan.inner(&ca, &cb)));
            let mut skew = BigRational::zero();
            for (x, &cx) in ca.iter().enumerate() {
                for (y, &cy) in cb.iter().enumerate() {
                    if cx != 0 && cy != 0 {
                        skew += a.get(x, y) * BigInt::from(cx * cy);
                    }
                }
            }
            let root = mrep.base.root;
            let mu = root.q_pow(&(&skew - &inner))?;
            let nu = root.q_pow(&(-&inner - &skew))?;
            steps.insert(*gamma, CompositeStep { alpha, beta, mu, nu });
        }
        Ok(Self { order: order.clone(), steps })
    }

    /// Applies the recipe to arbitrary images of the simple generators.
    pub fn apply(&self, e_simple: &[QvMatrix], f_simple: &[QvMatrix]) -> CartanWeylFamily {
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        let mut by_height: Vec<Root> = self.order.roots().to_vec();
        by_height.sort_by_key(|r| (r.height(), *r));
        for gamma in by_height {
            if gamma.is_simple() {
                e.insert(gamma, e_simple[gamma.i - 1].clone());
                f.insert(gamma, f_simple[gamma.i - 1].clone());
                continue;
            }
            let s = &self.steps[&gamma];
            let eg = e[&s.alpha].q_commutator(&e[&s.beta], &s.mu);
            let fg = f[&s.alpha].q_commutator(&f[&s.beta], &s.nu);
            e.insert(gamma, eg);
            f.insert(gamma, fg);
        }
        CartanWeylFamily { recipe: self.clone(), e, f }
    }
}

/// Root vectors `E_β`, `F_β` for every positive root.
#[derive(Clone, Debug)]
pub struct CartanWeylFamily {
    pub recipe: CartanWeylRecipe,
    pub e: BTreeMap<Root, QvMatrix>,
    pub f: BTreeMap<Root, QvMatrix>,
}

impl CartanWeylFamily {
    pub fn order(&self) -> &NormalOrder {
        &self.recipe.order
    }

    pub fn e(&self, r: &Root) -> &QvMatrix {
        &self.e[r]
    }

    pub fn f(&self, r: &Root) -> &QvMatrix {
        &self.f[r]
    }

    /// Every root vector squares to zero.
    pub fn check_square_zero(&self) -> std::result::Result<(), String> {
        for (r, m) in self.e.iter().chain(self.f.iter()) {
            if !(m * m).is_zero() {
                return Err(format!("root vector for {r} does not square to zero"));
            }
        }
        Ok(())
    }
}

/// Cartan-Weyl root vectors of the modified generators along `order`.
pub fn cartan_weyl(mrep: &ModifiedRep, order: &NormalOrder) -> Result<CartanWeylFamily> {
    Ok(CartanWeylRecipe::new(mrep, order)?.apply(&mrep.e, &mrep.f))
}

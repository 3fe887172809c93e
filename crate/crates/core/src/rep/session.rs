use num_rational::BigRational;

use super::cartan_weyl::{cartan_weyl, CartanWeylFamily};
use super::fundamental::{cartan_on_v, cartan_on_vv, fundamental_rep, FundamentalRep};
use super::modified::{modified_rep, ModifiedRep};
use super::rmatrix::{calibrate_constants, full_twist, k0_exponents, standard_r, twisted_r, FullTwist, RootConstants, StandardR};
use super::twist::{coproduct_family, Coproduct};
use crate::error::{Error, Result};
use crate::linalg::QvMatrix;
use crate::roots::{build_cartan, convex_order};
use crate::scalar::{lcm_denominators, QRoot};
use crate::triples::{solve_exponents, validate_triple, BdTriple, ExponentSolution, Gauge, TripleChains};

/// Options for building a [`Session`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub gauge: Gauge,
    /// Extra factor folded into the root denominator `D`.
    pub extra_denominator: u64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            gauge: Gauge::default(),
            extra_denominator: 1,
        }
    }
}

/// Everything built for one triple and gauge in the fundamental representation.
#[derive(Clone, Debug)]
pub struct Session {
    pub triple: BdTriple,
    pub chains: TripleChains,
    pub config: SessionConfig,
    pub solution: ExponentSolution,
    pub root: QRoot,
    pub mrep: ModifiedRep,
    pub family: CartanWeylFamily,
    pub consts: RootConstants,
    pub standard: StandardR,
    pub twist: FullTwist,
    /// The twisted R-matrix `F₂₁ ℛ F^{-1}`.
    pub r: QvMatrix,
}

/// Smallest `D` such that every `q`-power built from `sol` is a power of `v = q^{1/D}`.
pub fn required_denominator(n: usize, sol: &ExponentSolution) -> Result<u64> {
    let c = build_cartan(n)?;
    let r = c.rank();
    let mut all: Vec<BigRational> = Vec::new();
    all.extend(sol.a_skew.entries().iter().cloned());
    all.extend(sol.b.entries().iter().cloned());
    let b = &sol.b;
    for i in 0..r {
        let xc: Vec<BigRational> = (0..r)
            .map(|m| (0..r).map(|k| b.get(m, k) * BigRational::from_integer(c.a(k, i).into())).sum())
            .collect();
        let yc: Vec<BigRational> = (0..r)
            .map(|m| (0..r).map(|k| b.get(k, m) * BigRational::from_integer(c.a(k, i).into())).sum())
            .collect();
        all.extend(cartan_on_v(n, &xc).exponents().iter().cloned());
        all.extend(cartan_on_v(n, &yc).exponents().iter().cloned());
    }
    all.extend(cartan_on_vv(n, b).exponents().iter().cloned());
    let s = crate::triples::symmetrized_cartan(&c);
    let k0 = -&s.invert()?;
    all.extend(cartan_on_vv(n, &k0).exponents().iter().cloned());
    Ok(lcm_denominators(all.iter()).max(1))
}

impl Session {
    pub fn new(triple: &BdTriple, config: SessionConfig) -> Result<Session> {
        if config.extra_denominator == 0 {
            return Err(Error::Parse("extra denominator must be positive".into()));
        }
        let chains = validate_triple(triple)?;
        let n = triple.n();
        let solution = solve_exponents(triple)?.with_gauge(n, &config.gauge)?;
        solution.check_identities(triple).map_err(Error::Invariant)?;
        let d = lcm(required_denominator(n, &solution)?, config.extra_denominator);
        let root = QRoot::new(d);
        let rep: FundamentalRep = fundamental_rep(n, root)?;
        let mrep = modified_rep(&rep, &solution)?;
        for check in [mrep.check_commutator(), mrep.check_conjugation(), mrep.check_triple_condition(triple)] {
            check.map_err(Error::Invariant)?;
        }
        let family = cartan_weyl(&mrep, &convex_order(n))?;
        let consts = calibrate_constants(&mrep, &family)?;
        let standard = standard_r(&mrep, &family, &consts)?;
        let twist = full_twist(&mrep, &family, &consts, triple)?;
        let r = twisted_r(&twist.f, &standard.r, n)?;
        Ok(Session {
            triple: triple.clone(),
            chains,
            config,
            solution,
            root,
            mrep,
            family,
            consts,
            standard,
            twist,
            r,
        })
    }

    /// Canonical gauge, minimal denominator.
    pub fn canonical(triple: &BdTriple) -> Result<Session> {
        Self::new(triple, SessionConfig::default())
    }

    pub fn n(&self) -> usize {
        self.triple.n()
    }

    pub fn denominator(&self) -> u64 {
        self.root.denominator()
    }

    pub fn degree(&self) -> usize {
        self.chains.degree
    }

    /// The same triple and gauge over a root denominator that is also a multiple of `extra`.
    pub fn with_denominator(&self, extra: u64) -> Result<Session> {
        let mut config = self.config.clone();
        config.extra_denominator = lcm(config.extra_denominator, extra);
        Session::new(&self.triple, config)
    }

    /// Coproduct images of all root vectors on `V⊗V`.
    pub fn coproduct_family(&self, coproduct: Coproduct) -> Result<CartanWeylFamily> {
        coproduct_family(&self.mrep, &self.family.recipe, coproduct)
    }

    /// The empty-triple session over the same denominator.
    pub fn standard_session(&self) -> Result<Session> {
        let config = SessionConfig {
            gauge: Gauge::default(),
            extra_denominator: self.denominator(),
        };
        Session::new(&BdTriple::empty(self.n()), config)
    }

    /// `-(a^{(s)})^{-1}` exponents of `K^(0)`.
    pub fn k0_exponents(&self) -> crate::linalg::RatMatrix {
        k0_exponents(&self.mrep)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    num_integer::Integer::lcm(&a, &b)
}

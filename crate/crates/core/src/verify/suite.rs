use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::checks::{
    check_cartan_cocycle, check_classical, check_cocycle, check_hecke, check_intertwiner_report, check_modified_relations,
    check_mutation, check_qybe, check_twist_reformulation,
};
use super::fit::{check_exchange, check_fits};
use super::identities::{check_addition_law, check_efr_identity, check_pentagon};
use super::prescreen::Prescreen;
use super::{errored, timed, CheckReport};
use crate::error::{Error, Result};
use crate::linalg::QvMatrix;
use crate::rep::{classical_r, coproduct_generators, symmetric_part, Coproduct, Session};
use crate::triples::BdTriple;

/// Every check the verifier knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    CartanCocycle,
    Classical,
    CocycleStandard,
    CocycleTwisted,
    CoproductFit,
    EfrIdentity,
    Exchange,
    Hecke,
    Intertwiner,
    ModifiedRelations,
    Mutation,
    Pentagon,
    QExpAddition,
    Qybe,
    TwistReformulation,
}

impl CheckName {
    pub const ALL: [CheckName; 15] = [
        CheckName::CartanCocycle,
        CheckName::Classical,
        CheckName::CocycleStandard,
        CheckName::CocycleTwisted,
        CheckName::CoproductFit,
        CheckName::EfrIdentity,
        CheckName::Exchange,
        CheckName::Hecke,
        CheckName::Intertwiner,
        CheckName::ModifiedRelations,
        CheckName::Mutation,
        CheckName::Pentagon,
        CheckName::QExpAddition,
        CheckName::Qybe,
        CheckName::TwistReformulation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::CartanCocycle => "cartan-cocycle",
            CheckName::Classical => "classical",
            CheckName::CocycleStandard => "cocycle-standard",
            CheckName::CocycleTwisted => "cocycle-twisted",
            CheckName::CoproductFit => "coproduct-fit",
            CheckName::EfrIdentity => "efr-identity",
            CheckName::Exchange => "exchange",
            CheckName::Hecke => "hecke",
            CheckName::Intertwiner => "intertwiner",
            CheckName::ModifiedRelations => "modified-relations",
            CheckName::Mutation => "mutation",
            CheckName::Pentagon => "pentagon",
            CheckName::QExpAddition => "q-exp-addition",
            CheckName::Qybe => "qybe",
            CheckName::TwistReformulation => "twist-reformulation",
        }
    }

    /// Checks on fixed instances that do not depend on the session's triple.
    pub fn is_instance_check(self) -> bool {
        matches!(self, CheckName::Pentagon | CheckName::QExpAddition | CheckName::EfrIdentity)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub prescreen: bool,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            prescreen: false,
            seed: Prescreen::DEFAULT_SEED,
        }
    }
}

/// The sl(3) and sl(4) Cremmer-Gervais triples in the canonical gauge.
pub fn worked_example_sessions() -> Result<Vec<Session>> {
    let sl3 = BdTriple::new(3, [(1, 2)])?;
    let sl4 = BdTriple::new(4, [(1, 2), (2, 3)])?;
    Ok(vec![Session::canonical(&sl3)?, Session::canonical(&sl4)?])
}

fn instance_session() -> Result<Session> {
    Session::canonical(&BdTriple::new(3, [(1, 2)])?)
}

fn instance_reports(name: CheckName) -> Vec<CheckReport> {
    let s = match instance_session() {
        Ok(s) => s,
        Err(e) => return vec![errored(name.as_str(), "sl(3) {1->2}", &e)],
    };
    let ctx = s.triple.to_string();
    let fund = format!("{ctx} on V");
    let square = format!("{ctx} on V⊗V");
    let m = &s.mrep;
    let q2 = s.root.q_int(2);
    let id = QvMatrix::identity(s.n());
    let coproducts = |c: Coproduct| coproduct_generators(m, c);
    match name {
        CheckName::Pentagon => {
            let mut out = vec![timed(|| check_pentagon(&m.e[1], &m.e[0], &q2, &fund))];
            match coproducts(Coproduct::Standard) {
                Ok((de, _)) => out.push(timed(|| check_pentagon(&de[1], &de[0], &q2, &square))),
                Err(e) => out.push(errored(name.as_str(), &square, &e)),
            }
            out
        }
        CheckName::QExpAddition => {
            let x = m.e[0].kron(&m.r_plus[0]);
            let y = id.kron(&m.e[0]);
            vec![timed(|| check_addition_law(&x, &y, &q2, &square))]
        }
        CheckName::EfrIdentity => {
            let lam = s.root.lambda();
            let mut out = vec![timed(|| check_efr_identity(&m.e[0], &m.f[0].scale(&lam), &m.r_plus[0], &m.r_minus[0], s.root, &fund))];
            match coproducts(Coproduct::Twisted) {
                Ok((de, df)) => {
                    let rp = m.r_plus[0].kron(&m.r_plus[0]);
                    let rm = m.r_minus[0].kron(&m.r_minus[0]);
                    out.push(timed(|| check_efr_identity(&de[0], &df[0].scale(&lam), &rp, &rm, s.root, &square)));
                }
                Err(e) => out.push(errored(name.as_str(), &square, &e)),
            }
            out
        }
        _ => unreachable!("not an instance check"),
    }
}

fn empty_symmetric_part(n: usize) -> Result<crate::linalg::RatMatrix> {
    let e = Session::canonical(&BdTriple::empty(n))?;
    Ok(symmetric_part(&classical_r(&e.r, e.denominator())?, n))
}

/// Runs one named check on a session; instance checks ignore the session.
pub fn run_named(name: CheckName, s: &Session, opts: SuiteOptions) -> Vec<CheckReport> {
    if name.is_instance_check() {
        return instance_reports(name);
    }
    let mut pre = opts.prescreen.then(|| Prescreen::new(opts.seed));
    let ctx = s.triple.to_string();
    let report = timed(|| match name {
        CheckName::Qybe => check_qybe(&s.r, &ctx, pre.as_mut()),
        CheckName::Hecke => check_hecke(&s.r, s.n(), s.root, &ctx),
        CheckName::CocycleStandard => check_cocycle(s, Coproduct::Standard, pre.as_mut()),
        CheckName::CocycleTwisted => check_cocycle(s, Coproduct::Twisted, pre.as_mut()),
        CheckName::CartanCocycle => check_cartan_cocycle(s),
        CheckName::Intertwiner => check_intertwiner_report(s),
        CheckName::Classical => match empty_symmetric_part(s.n()) {
            Ok(sym) => check_classical(s, &sym),
            Err(e) => errored(name.as_str(), &ctx, &e),
        },
        CheckName::ModifiedRelations => check_modified_relations(s),
        CheckName::TwistReformulation => check_twist_reformulation(s),
        CheckName::CoproductFit => check_fits(s),
        CheckName::Exchange => check_exchange(s),
        CheckName::Mutation => check_mutation(s, opts.seed),
        CheckName::Pentagon | CheckName::QExpAddition | CheckName::EfrIdentity => unreachable!(),
    });
    vec![report]
}

/// Runs the selected checks on every session, in parallel; output is sorted by check name, then context.
pub fn run_suite(sessions: &[Session], names: &[CheckName], opts: SuiteOptions) -> Vec<CheckReport> {
    let mut jobs: Vec<(CheckName, Option<usize>)> = Vec::new();
    for &name in names {
        if name.is_instance_check() {
            jobs.push((name, None));
        } else {
            jobs.extend((0..sessions.len()).map(|i| (name, Some(i))));
        }
    }
    let mut out: Vec<CheckReport> = jobs
        .par_iter()
        .flat_map_iter(|&(name, idx)| match idx {
            Some(i) => run_named(name, &sessions[i], opts),
            None => instance_reports(name),
        })
        .collect();
    out.sort_by(|a, b| (&a.name, &a.context).cmp(&(&b.name, &b.context)));
    out
}

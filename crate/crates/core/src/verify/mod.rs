//! Exact identity checks with single-entry witnesses.

mod checks;
mod fit;
mod identities;
mod prescreen;
mod suite;

use std::fmt;
use std::time::Instant;

use serde_json::{json, Value};

use crate::linalg::{QvMatrix, SquareMatrix};
use crate::scalar::Field;

pub use checks::{
    check_cartan_cocycle, check_classical, check_cocycle, check_cocycle_expr, check_hecke, check_intertwiner_report, check_modified_relations,
    check_mutation, check_qybe, check_twist_reformulation, hecke_scalar,
};
pub use fit::{check_exchange, check_fits, fit_cartan_factor, joint_fit, CartanFit, FitSide};
pub use identities::{check_addition_law, check_efr_identity, check_pentagon, phi_diagonal, PhiCombination};
pub use prescreen::Prescreen;
pub use suite::{worked_example_sessions, run_named, run_suite, CheckName, SuiteOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// A single differing entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Triple, gauge or instance the check ran on.
    pub context: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub detail: Option<String>,
    pub ms: u128,
}

impl CheckReport {
    pub fn pass(name: &str, context: &str) -> Self {
        Self {
            name: name.to_string(),
            context: context.to_string(),
            status: Status::Pass,
            witness: None,
            detail: None,
            ms: 0,
        }
    }

    pub fn fail(name: &str, context: &str, detail: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            detail: Some(detail.into()),
            ..Self::pass(name, context)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            Some(w) => json!({"row": w.row, "col": w.col, "lhs": w.lhs, "rhs": w.rhs}),
            None => Value::Null,
        };
        let mut v = json!({
            "check": self.name,
            "context": self.context,
            "status": self.status.to_string(),
            "witness": witness,
            "ms": self.ms as u64,
        });
        if let Some(d) = &self.detail {
            v["detail"] = Value::String(d.clone());
        }
        v
    }
}

/// Compares two matrices exactly; on mismatch reports the first differing entry.
pub fn compare<T: Field + fmt::Display>(name: &str, context: &str, lhs: &SquareMatrix<T>, rhs: &SquareMatrix<T>) -> CheckReport {
    if lhs.dim() != rhs.dim() {
        return CheckReport::fail(name, context, format!("dimensions {} and {} differ", lhs.dim(), rhs.dim()));
    }
    match lhs.first_difference(rhs) {
        None => CheckReport::pass(name, context),
        Some((row, col)) => CheckReport {
            witness: Some(Witness {
                row,
                col,
                lhs: lhs.get(row, col).to_string(),
                rhs: rhs.get(row, col).to_string(),
            }),
            ..CheckReport::fail(name, context, "sides differ")
        },
    }
}

/// Runs `f` and stamps the elapsed time on its report.
pub fn timed(f: impl FnOnce() -> CheckReport) -> CheckReport {
    let start = Instant::now();
    let mut r = f();
    r.ms = start.elapsed().as_millis();
    r
}

/// Converts an error raised while preparing a check into a failed report.
pub(crate) fn errored(name: &str, context: &str, e: &crate::Error) -> CheckReport {
    CheckReport::fail(name, context, format!("error: {e}"))
}

pub(crate) fn product(ms: &[&QvMatrix]) -> QvMatrix {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = &acc * *m;
    }
    acc
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bdtwist::json;
use bdtwist::linalg::QvMatrix;
use bdtwist::rep::{Session, SessionConfig};
use bdtwist::triples::{enumerate_triples, solve_exponents, validate_triple, BdTriple, Gauge, DEFAULT_BOUND};
use bdtwist::verify::{self, CheckName, CheckReport, Prescreen, SuiteOptions};
use bdtwist::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bdtwist", version, about = "Twists and R-matrices for Belavin-Drinfeld triples of sl(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a triple and print its degree.
    Validate(TripleArgs),
    /// Solve for the exponent data of a triple.
    Solve(JobArgs),
    /// Build the twist and R-matrices and write them as JSON.
    Rmatrix(JobArgs),
    /// Run verification checks and print one JSON line per report.
    Verify(VerifyArgs),
    /// List all valid triples for sl(n).
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct TripleArgs {
    /// Rank plus one; must match the triple file when both are given.
    #[arg(long)]
    n: Option<usize>,
    /// Triple JSON file.
    #[arg(long)]
    triple: PathBuf,
}

#[derive(Args)]
struct JobArgs {
    #[command(flatten)]
    triple: TripleArgs,
    /// Gauge JSON: a symmetric matrix, or {"free": [...], "sym": matrix}.
    #[arg(long)]
    gauge_sym: Option<PathBuf>,
    /// Output directory; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// The sl(3) and sl(4) Cremmer-Gervais examples.
    PaperExamples,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Named suite of checks.
    #[arg(long, value_enum, conflicts_with_all = ["check", "matrix"])]
    suite: Option<Suite>,
    /// Individual check to run; repeatable.
    #[arg(long)]
    check: Vec<String>,
    /// Check QYBE and the Hecke relation for an R-matrix JSON file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Triple to verify; the worked sl(3) and sl(4) examples when omitted.
    #[arg(long)]
    triple: Option<PathBuf>,
    #[arg(long)]
    gauge_sym: Option<PathBuf>,
    #[arg(long, default_value_t = Prescreen::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "off")]
    prescreen: Toggle,
    /// Also write the reports to DIR/reports.jsonl.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure that maps to an exit code.
enum Failure {
    Checks,
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Rmatrix(a) => cmd_rmatrix(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Enumerate(a) => cmd_enumerate(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            let kind = if e.is_domain() { "domain" } else { "internal" };
            eprintln!("{}", json!({"error": kind, "message": e.to_string()}));
            ExitCode::from(if e.is_domain() { 2 } else { 3 })
        }
        Err(Failure::Io(m)) => {
            eprintln!("{}", json!({"error": "io", "message": m}));
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_triple(args: &TripleArgs) -> Result<BdTriple, Failure> {
    load_triple_from(&args.triple, args.n)
}

fn load_triple_from(path: &Path, n: Option<usize>) -> Result<BdTriple, Failure> {
    let t = json::parse_triple(&read(path)?)?;
    if let Some(n) = n {
        if n != t.n() {
            return Err(Error::Parse(format!("--n {n} does not match the triple's n = {}", t.n())).into());
        }
    }
    Ok(t)
}

fn load_gauge(path: Option<&PathBuf>) -> Result<Gauge, Failure> {
    match path {
        Some(p) => Ok(json::parse_gauge(&read(p)?)?),
        None => Ok(Gauge::default()),
    }
}

fn emit(out: Option<&PathBuf>, file: &str, value: &Value) -> CmdResult {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            let path = dir.join(file);
            let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
            fs::write(&path, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            println!("{value}");
            Ok(())
        }
    }
}

fn cmd_validate(a: &TripleArgs) -> CmdResult {
    let t = load_triple(a)?;
    match validate_triple(&t) {
        Ok(ch) => {
            let sets = |v: &[std::collections::BTreeSet<usize>]| v.iter().map(|s| s.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>();
            println!(
                "{}",
                json!({"valid": true, "degree": ch.degree, "gamma1_chain": sets(&ch.gamma1), "gamma2_chain": sets(&ch.gamma2)})
            );
            Ok(())
        }
        Err(e) => {
            println!("{}", json!({"valid": false, "violation": format!("{e:?}"), "message": e.to_string()}));
            Err(e.into())
        }
    }
}

fn cmd_solve(a: &JobArgs) -> CmdResult {
    let t = load_triple(&a.triple)?;
    validate_triple(&t)?;
    let sol = solve_exponents(&t)?.with_gauge(t.n(), &load_gauge(a.gauge_sym.as_ref())?)?;
    emit(a.out.as_ref(), "solution.json", &json::solution_to_json(&sol))
}

fn cmd_rmatrix(a: &JobArgs) -> CmdResult {
    let t = load_triple(&a.triple)?;
    let config = SessionConfig {
        gauge: load_gauge(a.gauge_sym.as_ref())?,
        ..SessionConfig::default()
    };
    let s = Session::new(&t, config)?;
    let d = s.denominator();
    let m = |x: &QvMatrix| json::matrix_to_json(x, d);
    let out = a.out.as_ref();
    if out.is_none() {
        // Everything in one document on stdout.
        let factors: Vec<Value> = s.twist.factor_matrices.iter().map(m).collect();
        let doc = json!({
            "triple": json::triple_to_json(&t),
            "solution": json::solution_to_json(&s.solution),
            "K": m(&s.twist.k),
            "F_factors": factors,
            "F": m(&s.twist.f),
            "R_standard": m(&s.standard.r),
            "R": m(&s.r),
            "twist": json::twist_to_json(&s.twist.expr, d),
        });
        println!("{doc}");
        return Ok(());
    }
    emit(out, "solution.json", &json::solution_to_json(&s.solution))?;
    emit(out, "K.json", &m(&s.twist.k))?;
    for (k, f) in s.twist.factor_matrices.iter().enumerate() {
        emit(out, &format!("F_{}.json", k + 1), &m(f))?;
    }
    emit(out, "F.json", &m(&s.twist.f))?;
    emit(out, "R_standard.json", &m(&s.standard.r))?;
    emit(out, "R.json", &m(&s.r))?;
    emit(out, "twist.json", &json::twist_to_json(&s.twist.expr, d))
}

fn matrix_reports(path: &Path, prescreen: Option<&mut Prescreen>) -> Result<Vec<CheckReport>, Failure> {
    let (r, d) = json::parse_matrix(&read(path)?)?;
    let ctx = path.display().to_string();
    let mut out = vec![verify::check_qybe(&r, &ctx, prescreen)];
    let n = (r.dim() as f64).sqrt().round() as usize;
    if n * n == r.dim() && n >= 2 {
        out.push(verify::check_hecke(&r, n, bdtwist::scalar::QRoot::new(d), &ctx));
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let opts = SuiteOptions {
        prescreen: a.prescreen == Toggle::On,
        seed: a.seed,
    };
    let reports = if let Some(path) = &a.matrix {
        let mut p = opts.prescreen.then(|| Prescreen::new(opts.seed));
        matrix_reports(path, p.as_mut())?
    } else {
        let names: Vec<CheckName> = if a.check.is_empty() {
            CheckName::ALL.to_vec()
        } else {
            a.check.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
        };
        let sessions = match (&a.triple, a.suite) {
            (Some(path), _) => {
                let config = SessionConfig {
                    gauge: load_gauge(a.gauge_sym.as_ref())?,
                    ..SessionConfig::default()
                };
                vec![Session::new(&load_triple_from(path, a.n)?, config)?]
            }
            (None, Some(Suite::All)) => {
                let mut v = Vec::new();
                for n in 2..=4 {
                    for t in enumerate_triples(n, DEFAULT_BOUND)? {
                        v.push(Session::canonical(&t)?);
                    }
                }
                v
            }
            (None, _) => verify::worked_example_sessions()?,
        };
        verify::run_suite(&sessions, &names, opts)
    };
    let mut lines = String::new();
    for r in &reports {
        let line = r.to_json().to_string();
        println!("{line}");
        lines.push_str(&line);
        lines.push('\n');
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join("reports.jsonl");
        fs::write(&path, lines).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_enumerate(a: &EnumerateArgs) -> CmdResult {
    let triples = enumerate_triples(a.n, a.bound)?;
    let mut list = Vec::new();
    for t in &triples {
        let degree = validate_triple(t)?.degree;
        list.push(json!({"triple": json::triple_to_json(t), "degree": degree}));
    }
    emit(a.out.as_ref(), "triples.json", &json!({"n": a.n, "count": triples.len(), "triples": list}))
}

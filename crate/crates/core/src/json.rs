//! JSON encodings of scalars, matrices, triples, exponent data and twist expressions.
//!
//! Integers are written as JSON numbers of arbitrary size. Rationals are JSON
//! integers or strings `"p/q"`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::linalg::{QvMatrix, RatMatrix};
use crate::rep::{TwistExpression, TwistFactor};
use crate::roots::Root;
use crate::scalar::{LaurentPoly, Scalar};
use crate::triples::{BdTriple, ExponentSolution, Gauge};

/// Largest accepted `|exponent|` of `v` in imported scalars.
pub const MAX_EXPONENT: i64 = 1 << 12;
/// Largest accepted matrix dimension.
pub const MAX_DIM: usize = 1 << 12;
/// Largest accepted `n` for `sl(n)` data.
pub const MAX_N: usize = 64;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal is a valid JSON number"))
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| perr(format!("{n} is not an integer"))),
        _ => Err(perr("expected an integer")),
    }
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| perr(format!("{what} must be a non-negative integer")))
}

fn parse_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(format!("{what} must be an integer")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

// ---- rationals -------------------------------------------------------------

pub fn rational_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(x.numer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(_) => Ok(BigRational::from_integer(parse_bigint(v)?)),
        Value::String(s) => {
            let s = s.trim();
            if s.len() > 4096 {
                return Err(perr("rational literal too long"));
            }
            let (p, q) = match s.split_once('/') {
                Some((p, q)) => (p, q),
                None => (s, "1"),
            };
            let p = BigInt::from_str(p.trim()).map_err(|_| perr(format!("bad numerator in {s:?}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| perr(format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(perr("zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
        _ => Err(perr("rational must be an integer or a \"p/q\" string")),
    }
}

pub fn rat_matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn rat_matrix_from_json(v: &Value) -> Result<RatMatrix> {
    let rows = array(v, "rational matrix")?;
    let dim = rows.len();
    if dim > MAX_DIM {
        return Err(perr("matrix too large"));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for row in rows {
        let row = array(row, "matrix row")?;
        if row.len() != dim {
            return Err(perr("rational matrix must be square"));
        }
        for x in row {
            entries.push(rational_from_json(x)?);
        }
    }
    RatMatrix::from_vec(dim, entries)
}

// ---- scalars ---------------------------------------------------------------

fn poly_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| Value::Array(vec![int_value(c.numer()), int_value(c.denom()), json!(e)]))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<LaurentPoly> {
    let terms = array(v, "polynomial")?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = array(t, "term")?;
        if t.len() != 3 {
            return Err(perr("term must be [numerator, denominator, exponent]"));
        }
        let (cn, cd) = (parse_bigint(&t[0])?, parse_bigint(&t[1])?);
        if cd.is_zero() {
            return Err(perr("zero coefficient denominator"));
        }
        let e = parse_i64(&t[2], "exponent")?;
        if e.abs() > MAX_EXPONENT {
            return Err(perr(format!("exponent {e} out of range")));
        }
        out.push((e, BigRational::new(cn, cd)));
    }
    Ok(LaurentPoly::from_terms(out))
}

/// `{"D": D, "num": [[cn, cd, exp], ...], "den": [...]}` for an element of `Q(v)`, `v = q^{1/D}`.
pub fn scalar_to_json(s: &Scalar, d: u64) -> Value {
    json!({"D": d, "num": poly_to_json(s.num()), "den": poly_to_json(s.den())})
}

/// Returns the scalar and its `D`.
pub fn scalar_from_json(v: &Value) -> Result<(Scalar, u64)> {
    let obj = object(v, "scalar")?;
    let d = field(obj, "D")?.as_u64().filter(|&d| d > 0).ok_or_else(|| perr("D must be a positive integer"))?;
    let num = poly_from_json(field(obj, "num")?)?;
    let den = match obj.get("den") {
        Some(x) => poly_from_json(x)?,
        None => LaurentPoly::one(),
    };
    if den.is_zero() {
        return Err(perr("zero denominator"));
    }
    Ok((Scalar::new(num, den)?, d))
}

pub fn parse_scalar(text: &str) -> Result<(Scalar, u64)> {
    scalar_from_json(&parse_text(text)?)
}

/// Re-expresses a scalar over `v' = q^{1/to}` given it is written over `q^{1/from}`.
pub fn rescale(s: &Scalar, from: u64, to: u64) -> Result<Scalar> {
    if from == 0 || !to.is_multiple_of(from) {
        return Err(perr(format!("cannot move a scalar from D={from} to D={to}")));
    }
    Ok(s.inflate((to / from) as i64))
}

// ---- matrices --------------------------------------------------------------

/// `{"D": D, "dim": d, "entries": [[row, col, scalar], ...]}` listing nonzero entries in row-major order.
pub fn matrix_to_json(m: &QvMatrix, d: u64) -> Value {
    let entries: Vec<Value> = m
        .nonzero_positions()
        .map(|(r, c)| json!([r, c, scalar_to_json(m.get(r, c), d)]))
        .collect();
    json!({"D": d, "dim": m.dim(), "entries": entries})
}

pub fn matrix_from_json(v: &Value) -> Result<(QvMatrix, u64)> {
    let obj = object(v, "matrix")?;
    let dim = parse_usize(field(obj, "dim")?, "dim")?;
    if dim > MAX_DIM {
        return Err(perr("matrix too large"));
    }
    let d = field(obj, "D")?.as_u64().filter(|&d| d > 0).ok_or_else(|| perr("D must be a positive integer"))?;
    let mut m = QvMatrix::zeros(dim);
    let mut seen = std::collections::BTreeSet::new();
    for e in array(field(obj, "entries")?, "entries")? {
        let e = array(e, "entry")?;
        if e.len() != 3 {
            return Err(perr("entry must be [row, col, scalar]"));
        }
        let (r, c) = (parse_usize(&e[0], "row")?, parse_usize(&e[1], "col")?);
        if r >= dim || c >= dim {
            return Err(perr(format!("entry ({r},{c}) outside a {dim}x{dim} matrix")));
        }
        if !seen.insert((r, c)) {
            return Err(perr(format!("duplicate entry ({r},{c})")));
        }
        let (s, sd) = scalar_from_json(&e[2])?;
        if sd != d {
            return Err(perr(format!("entry ({r},{c}) uses D={sd}, matrix uses D={d}")));
        }
        m.set(r, c, s);
    }
    Ok((m, d))
}

pub fn parse_matrix(text: &str) -> Result<(QvMatrix, u64)> {
    matrix_from_json(&parse_text(text)?)
}

// ---- triples ---------------------------------------------------------------

/// `{"n": n, "gamma1": [...], "gamma2": [...], "tau": {"i": j, ...}}` with 1-based simple roots.
pub fn triple_to_json(t: &BdTriple) -> Value {
    let tau: Map<String, Value> = t.map().iter().map(|(a, b)| (a.to_string(), json!(b))).collect();
    json!({
        "n": t.n(),
        "gamma1": t.gamma1().into_iter().collect::<Vec<_>>(),
        "gamma2": t.gamma2().into_iter().collect::<Vec<_>>(),
        "tau": tau,
    })
}

/// Parses a triple; `gamma1`/`gamma2` are optional but must agree with `tau` when present.
pub fn triple_from_json(v: &Value) -> Result<BdTriple> {
    let obj = object(v, "triple")?;
    let n = parse_usize(field(obj, "n")?, "n")?;
    if n > MAX_N {
        return Err(perr(format!("n = {n} exceeds {MAX_N}")));
    }
    let tau_obj = object(field(obj, "tau")?, "tau")?;
    let mut tau = BTreeMap::new();
    for (k, v) in tau_obj {
        let a: usize = k.parse().map_err(|_| perr(format!("tau key {k:?} is not a root index")))?;
        let b = parse_usize(v, "tau value")?;
        tau.insert(a, b);
    }
    let list = |key: &str| -> Result<Option<Vec<usize>>> {
        match obj.get(key) {
            None => Ok(None),
            Some(x) => array(x, key)?.iter().map(|y| parse_usize(y, key)).collect::<Result<Vec<_>>>().map(Some),
        }
    };
    let g1 = list("gamma1")?.unwrap_or_else(|| tau.keys().copied().collect());
    let g2 = list("gamma2")?.unwrap_or_else(|| tau.values().copied().collect());
    BdTriple::from_parts(n, &g1, &g2, &tau)
}

pub fn parse_triple(text: &str) -> Result<BdTriple> {
    triple_from_json(&parse_text(text)?)
}

// ---- exponent data ---------------------------------------------------------

pub fn solution_to_json(s: &ExponentSolution) -> Value {
    json!({
        "A": rat_matrix_to_json(&s.a_skew),
        "b": rat_matrix_to_json(&s.b),
        "denominator": s.denominator,
        "null_space": s.null_space.iter().map(rat_matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn solution_from_json(v: &Value) -> Result<ExponentSolution> {
    let obj = object(v, "solution")?;
    let a_skew = rat_matrix_from_json(field(obj, "A")?)?;
    let b = rat_matrix_from_json(field(obj, "b")?)?;
    if a_skew.dim() != b.dim() {
        return Err(perr("A and b have different sizes"));
    }
    let denominator = field(obj, "denominator")?
        .as_u64()
        .filter(|&d| d > 0)
        .ok_or_else(|| perr("denominator must be a positive integer"))?;
    let null_space = array(field(obj, "null_space")?, "null_space")?
        .iter()
        .map(rat_matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    if null_space.iter().any(|m| m.dim() != a_skew.dim()) {
        return Err(perr("null-space matrices have the wrong size"));
    }
    Ok(ExponentSolution {
        a_skew,
        b,
        denominator,
        null_space,
    })
}

pub fn parse_solution(text: &str) -> Result<ExponentSolution> {
    solution_from_json(&parse_text(text)?)
}

/// `{"free": [t, ...], "sym": matrix | null}`; a bare rational matrix is read as the symmetric part.
pub fn gauge_to_json(g: &Gauge) -> Value {
    json!({
        "free": g.free.iter().map(rational_to_json).collect::<Vec<_>>(),
        "sym": g.sym.as_ref().map(rat_matrix_to_json).unwrap_or(Value::Null),
    })
}

pub fn gauge_from_json(v: &Value) -> Result<Gauge> {
    if v.is_array() {
        return Ok(Gauge {
            free: Vec::new(),
            sym: Some(rat_matrix_from_json(v)?),
        });
    }
    let obj = object(v, "gauge")?;
    let free = match obj.get("free") {
        None | Some(Value::Null) => Vec::new(),
        Some(x) => array(x, "free")?.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?,
    };
    let sym = match obj.get("sym") {
        None | Some(Value::Null) => None,
        Some(x) => Some(rat_matrix_from_json(x)?),
    };
    Ok(Gauge { free, sym })
}

pub fn parse_gauge(text: &str) -> Result<Gauge> {
    gauge_from_json(&parse_text(text)?)
}

// ---- twist expressions -----------------------------------------------------

fn root_json(r: &Root) -> Value {
    json!([r.i, r.j])
}

fn root_from_json(v: &Value, n: usize) -> Result<Root> {
    let a = array(v, "root")?;
    if a.len() != 2 {
        return Err(perr("root must be [i, j]"));
    }
    let (i, j) = (parse_usize(&a[0], "root")?, parse_usize(&a[1], "root")?);
    if !(1 <= i && i < j && j <= n) {
        return Err(perr(format!("({i},{j}) is not a positive root of sl({n})")));
    }
    Ok(Root::new(i, j))
}

/// `{"n": n, "D": D, "factors": [{"kind": "exp", ...} | {"kind": "cartan", "exponents": ...}]}`.
pub fn twist_to_json(e: &TwistExpression, d: u64) -> Value {
    let factors: Vec<Value> = e
        .factors
        .iter()
        .map(|f| match f {
            TwistFactor::Exp { root, target, coeff, base } => json!({
                "kind": "exp",
                "root": root_json(root),
                "target": root_json(target),
                "coeff": scalar_to_json(coeff, d),
                "base": scalar_to_json(base, d),
            }),
            TwistFactor::Cartan { exponents } => json!({"kind": "cartan", "exponents": rat_matrix_to_json(exponents)}),
        })
        .collect();
    json!({"n": e.n, "D": d, "factors": factors})
}

pub fn twist_from_json(v: &Value) -> Result<(TwistExpression, u64)> {
    let obj = object(v, "twist")?;
    let n = parse_usize(field(obj, "n")?, "n")?;
    if !(2..=MAX_N).contains(&n) {
        return Err(perr(format!("n = {n} out of range")));
    }
    let d = field(obj, "D")?.as_u64().filter(|&d| d > 0).ok_or_else(|| perr("D must be a positive integer"))?;
    let scalar = |x: &Value| -> Result<Scalar> {
        let (s, sd) = scalar_from_json(x)?;
        if sd != d {
            return Err(perr(format!("scalar uses D={sd}, expression uses D={d}")));
        }
        Ok(s)
    };
    let mut factors = Vec::new();
    for f in array(field(obj, "factors")?, "factors")? {
        let fo = object(f, "factor")?;
        match field(fo, "kind")?.as_str() {
            Some("exp") => factors.push(TwistFactor::Exp {
                root: root_from_json(field(fo, "root")?, n)?,
                target: root_from_json(field(fo, "target")?, n)?,
                coeff: scalar(field(fo, "coeff")?)?,
                base: scalar(field(fo, "base")?)?,
            }),
            Some("cartan") => {
                let exponents = rat_matrix_from_json(field(fo, "exponents")?)?;
                if exponents.dim() != n - 1 {
                    return Err(perr(format!("Cartan exponents must be {0}x{0}", n - 1)));
                }
                factors.push(TwistFactor::Cartan { exponents });
            }
            _ => return Err(perr("factor kind must be \"exp\" or \"cartan\"")),
        }
    }
    Ok((TwistExpression::new(n, factors), d))
}

pub fn parse_twist(text: &str) -> Result<(TwistExpression, u64)> {
    twist_from_json(&parse_text(text)?)
}

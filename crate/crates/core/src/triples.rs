//! Belavin-Drinfeld triples for `sl(n)` and the exponent equations they induce.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, RatMatrix};
use crate::roots::{build_cartan, CartanData, Root};
use crate::scalar::lcm_denominators;

/// Default upper bound on `n` for enumeration.
pub const DEFAULT_BOUND: usize = 8;

/// A candidate triple `(Γ₁, Γ₂, τ)` on the simple roots `1..n-1` of `sl(n)`.
///
/// Construction only checks ranges and injectivity; [`validate_triple`]
/// checks the isometry and acyclicity conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BdTriple {
    n: usize,
    tau: BTreeMap<usize, usize>,
}

impl BdTriple {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedAlgebra(format!("sl({n}) has no simple roots")));
        }
        let rank = n - 1;
        let mut tau = BTreeMap::new();
        for (i, j) in pairs {
            for x in [i, j] {
                if x == 0 || x > rank {
                    return Err(Error::IndexOutOfRange { index: x, rank });
                }
            }
            if tau.insert(i, j).is_some() {
                return Err(Error::NotBijective(format!("tau({i}) assigned twice")));
            }
        }
        let image: BTreeSet<usize> = tau.values().copied().collect();
        if image.len() != tau.len() {
            return Err(Error::NotBijective("two roots share an image".into()));
        }
        Ok(Self { n, tau })
    }

    /// Builds a triple from explicit `Γ₁`, `Γ₂` and `τ`, checking that they agree.
    pub fn from_parts(n: usize, gamma1: &[usize], gamma2: &[usize], tau: &BTreeMap<usize, usize>) -> Result<Self> {
        let t = Self::new(n, tau.iter().map(|(&a, &b)| (a, b)))?;
        let g1: BTreeSet<usize> = gamma1.iter().copied().collect();
        let g2: BTreeSet<usize> = gamma2.iter().copied().collect();
        if g1.len() != gamma1.len() || g2.len() != gamma2.len() {
            return Err(Error::NotBijective("repeated index in gamma1 or gamma2".into()));
        }
        if g1 != t.gamma1() {
            return Err(Error::NotBijective("gamma1 differs from the domain of tau".into()));
        }
        if g2 != t.gamma2() {
            return Err(Error::NotBijective("gamma2 differs from the image of tau".into()));
        }
        Ok(t)
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("the empty triple is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn gamma1(&self) -> BTreeSet<usize> {
        self.tau.keys().copied().collect()
    }

    pub fn gamma2(&self) -> BTreeSet<usize> {
        self.tau.values().copied().collect()
    }

    pub fn map(&self) -> &BTreeMap<usize, usize> {
        &self.tau
    }

    pub fn tau(&self, i: usize) -> Option<usize> {
        self.tau.get(&i).copied()
    }

    /// `τ^k(i)` when all `k` steps are defined.
    pub fn tau_pow(&self, i: usize, k: usize) -> Option<usize> {
        (0..k).try_fold(i, |x, _| self.tau(x))
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
}

impl fmt::Display for BdTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.tau.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "sl({}) {{{}}}", self.n, pairs.join(", "))
    }
}

/// Degree and the nested chains of a valid triple.
///
/// `gamma1[k]` is nonempty for `k < degree` and empty at `k = degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleChains {
    pub degree: usize,
    pub gamma1: Vec<BTreeSet<usize>>,
    pub gamma2: Vec<BTreeSet<usize>>,
    /// `τ^{-k-1}(Γ₂^(k))`.
    pub lifted: Vec<BTreeSet<usize>>,
}

/// Checks isometry, then acyclicity, and returns the chains.
pub fn validate_triple(t: &BdTriple) -> Result<TripleChains> {
    let cartan = build_cartan(t.n)?;
    if let Some((i, j)) = isometry_violation(t, &cartan) {
        return Err(Error::NotIsometry { i, j });
    }
    for &a in t.tau.keys() {
        let mut x = a;
        for k in 1..=t.rank() {
            match t.tau(x) {
                Some(y) if y == a => return Err(Error::HasCycle { root: a, k }),
                Some(y) => x = y,
                None => break,
            }
        }
    }
    Ok(chains(t))
}

fn isometry_violation(t: &BdTriple, c: &CartanData) -> Option<(usize, usize)> {
    for (&i, &ti) in &t.tau {
        for (&j, &tj) in &t.tau {
            if c.sym(i - 1, j - 1) != c.sym(ti - 1, tj - 1) {
                return Some((i, j));
            }
        }
    }
    None
}

fn chains(t: &BdTriple) -> TripleChains {
    let image = |s: &BTreeSet<usize>| s.iter().map(|&x| t.tau(x).unwrap()).collect::<BTreeSet<_>>();
    let mut gamma1 = vec![t.gamma1()];
    let mut gamma2 = vec![t.gamma2()];
    while !gamma1.last().unwrap().is_empty() {
        let k = gamma1.len() - 1;
        let next: BTreeSet<usize> = gamma1[k].intersection(&gamma2[k]).copied().collect();
        gamma2.push(image(&next));
        gamma1.push(next);
    }
    let degree = gamma1.len() - 1;
    let lifted = (0..=degree)
        .map(|k| {
            t.tau
                .keys()
                .copied()
                .filter(|&x| t.tau_pow(x, k + 1).is_some_and(|y| gamma2[k].contains(&y)))
                .collect()
        })
        .collect();
    TripleChains {
        degree,
        gamma1,
        gamma2,
        lifted,
    }
}

/// The triple `(Γ̃₁^(k-1), Γ₂^(k-1), τ^k)`.
pub fn derived_triple(t: &BdTriple, k: usize) -> Result<BdTriple> {
    let ch = validate_triple(t)?;
    if k == 0 || k > ch.degree {
        return Err(Error::OutOfRange { k, degree: ch.degree });
    }
    let pairs = ch.lifted[k - 1].iter().map(|&x| (x, t.tau_pow(x, k).unwrap()));
    let d = BdTriple::new(t.n, pairs)?;
    if d.gamma2() != ch.gamma2[k - 1] {
        return Err(Error::Invariant(format!("derived triple {k} of {t} has the wrong image")));
    }
    validate_triple(&d).map_err(|e| Error::Invariant(format!("derived triple {k} of {t} is invalid: {e}")))?;
    Ok(d)
}

/// `τ^k(β)`, defined when the support of `β` lies in the domain of `τ^k`.
pub fn tau_on_root(t: &BdTriple, k: usize, beta: &Root) -> Option<Root> {
    let mut image: Vec<usize> = beta.support().map(|s| t.tau_pow(s, k)).collect::<Option<_>>()?;
    image.sort_unstable();
    let lo = image[0];
    if image.iter().enumerate().any(|(p, &x)| x != lo + p) {
        return None;
    }
    Some(Root::new(lo, lo + image.len()))
}

/// Every injective partial map between simple roots, valid or not.
pub fn candidate_triples(n: usize) -> Vec<BdTriple> {
    let mut out = Vec::new();
    let rank = n.saturating_sub(1);
    let mut current = Vec::new();
    extend_candidates(n, rank, 1, &mut current, &mut out, &|_, _| true);
    out.sort_by(canonical_cmp);
    out
}

fn extend_candidates(
    n: usize,
    rank: usize,
    next: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<BdTriple>,
    accept: &dyn Fn(&[(usize, usize)], (usize, usize)) -> bool,
) {
    if next > rank {
        out.push(BdTriple::new(n, current.iter().copied()).expect("candidates are injective"));
        return;
    }
    extend_candidates(n, rank, next + 1, current, out, accept);
    for img in 1..=rank {
        if current.iter().any(|&(_, y)| y == img) || !accept(current, (next, img)) {
            continue;
        }
        current.push((next, img));
        extend_candidates(n, rank, next + 1, current, out, accept);
        current.pop();
    }
}

fn canonical_cmp(a: &BdTriple, b: &BdTriple) -> std::cmp::Ordering {
    let key = |t: &BdTriple| (t.tau.len(), t.tau.iter().map(|(&x, &y)| (x, y)).collect::<Vec<_>>());
    key(a).cmp(&key(b))
}

/// All valid triples for `sl(n)`, ordered by `|Γ₁|` and then lexicographically.
pub fn enumerate_triples(n: usize, bound: usize) -> Result<Vec<BdTriple>> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let cartan = build_cartan(n)?;
    let isometric = |cur: &[(usize, usize)], (i, ti): (usize, usize)| {
        cartan.sym(i - 1, i - 1) == cartan.sym(ti - 1, ti - 1)
            && cur
                .iter()
                .all(|&(j, tj)| cartan.sym(i - 1, j - 1) == cartan.sym(ti - 1, tj - 1))
    };
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_candidates(n, n - 1, 1, &mut current, &mut out, &isometric);
    out.retain(|t| validate_triple(t).is_ok());
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// Exponent data of the modified basis: skew `A`, the matrix `b`, and the null space of the `A` equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSolution {
    pub a_skew: RatMatrix,
    pub b: RatMatrix,
    /// lcm of the denominators contributed by `A`, `b`, `b·a` and `ā·b`.
    pub denominator: u64,
    /// Basis of skew matrices `N` with `A + N` solving the same equations.
    pub null_space: Vec<RatMatrix>,
}

/// Optional deformation of the canonical solution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gauge {
    /// Coefficients of the null-space basis added to `A`; missing entries are zero.
    pub free: Vec<BigRational>,
    /// Symmetric part added to `b`.
    pub sym: Option<RatMatrix>,
}

impl Gauge {
    pub fn is_canonical(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.sym.as_ref().is_none_or(|s| s.is_zero())
    }
}

fn rat_int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn cartan_rat(c: &CartanData) -> RatMatrix {
    RatMatrix::from_fn(c.rank(), |i, j| rat_int(c.a(i, j)))
}

fn sym_rat(c: &CartanData) -> RatMatrix {
    RatMatrix::from_fn(c.rank(), |i, j| rat_int(c.sym(i, j)))
}

/// Skew `A` from `b`: `A = ā(b - b̄)a`.
pub fn a_from_b(c: &CartanData, b: &RatMatrix) -> RatMatrix {
    let a = cartan_rat(c);
    let skew = b - &b.transpose();
    &(&a.transpose() * &skew) * &a
}

/// `b = ½·ā^{-1}·A·a^{-1}`, the skew choice.
pub fn b_from_a(c: &CartanData, a_skew: &RatMatrix) -> RatMatrix {
    let a = cartan_rat(c);
    let ainv = a.invert().expect("Cartan matrix is invertible");
    let abar_inv = a.transpose().invert().expect("Cartan matrix is invertible");
    (&(&abar_inv * a_skew) * &ainv).scale(&BigRational::new(1.into(), 2.into()))
}

/// Solves `A_im + A_mτ(i) + a^{(s)}_im + a^{(s)}_τ(i)m = 0` for skew `A`.
pub fn solve_exponents(t: &BdTriple) -> Result<ExponentSolution> {
    let c = build_cartan(t.n)?;
    let r = c.rank();
    let mut index = BTreeMap::new();
    for i in 0..r {
        for j in i + 1..r {
            let k = index.len();
            index.insert((i, j), k);
        }
    }
    let nvars = index.len();
    // Coefficient vector of A_ij in terms of the upper-triangle unknowns.
    let entry = |i: usize, j: usize| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); nvars];
        if i < j {
            v[index[&(i, j)]] += BigRational::one();
        } else if i > j {
            v[index[&(j, i)]] -= BigRational::one();
        }
        v
    };
    let mut rows = Vec::new();
    for (&i1, &t1) in &t.tau {
        let (i, ti) = (i1 - 1, t1 - 1);
        for m in 0..r {
            let coeffs: Vec<BigRational> = entry(i, m).iter().zip(entry(m, ti)).map(|(x, y)| x + y).collect();
            rows.push((coeffs, rat_int(-(c.sym(i, m) + c.sym(ti, m)))));
        }
    }
    let sol = solve_linear(&rows, nvars).ok_or(Error::Inconsistent)?;
    let to_skew = |v: &[BigRational]| {
        let mut m = RatMatrix::zeros(r);
        for (&(i, j), &k) in &index {
            m.set(i, j, v[k].clone());
            m.set(j, i, -v[k].clone());
        }
        m
    };
    let a_skew = to_skew(&sol.particular);
    let null_space = sol.null_space.iter().map(|v| to_skew(v)).collect();
    Ok(finish_solution(&c, a_skew, None, null_space))
}

fn finish_solution(c: &CartanData, a_skew: RatMatrix, sym: Option<&RatMatrix>, null_space: Vec<RatMatrix>) -> ExponentSolution {
    let mut b = b_from_a(c, &a_skew);
    if let Some(s) = sym {
        b = &b + s;
    }
    let a = cartan_rat(c);
    let ba = &b * &a;
    let abar_b = &a.transpose() * &b;
    let denominator = lcm_denominators(
        a_skew
            .entries()
            .iter()
            .chain(b.entries())
            .chain(ba.entries())
            .chain(abar_b.entries()),
    );
    ExponentSolution {
        a_skew,
        b,
        denominator,
        null_space,
    }
}

impl ExponentSolution {
    /// Applies free skew parameters and a symmetric part of `b`.
    pub fn with_gauge(&self, n: usize, gauge: &Gauge) -> Result<ExponentSolution> {
        let c = build_cartan(n)?;
        let r = c.rank();
        if gauge.free.len() > self.null_space.len() {
            return Err(Error::Parse(format!(
                "{} free parameters given but the solution space has dimension {}",
                gauge.free.len(),
                self.null_space.len()
            )));
        }
        let mut a_skew = self.a_skew.clone();
        for (t, basis) in gauge.free.iter().zip(&self.null_space) {
            a_skew = &a_skew + &basis.scale(t);
        }
        if let Some(s) = &gauge.sym {
            if s.dim() != r {
                return Err(Error::Parse(format!("symmetric gauge must be {r}x{r}")));
            }
            if *s != s.transpose() {
                return Err(Error::Parse("gauge matrix is not symmetric".into()));
            }
        }
        Ok(finish_solution(&c, a_skew, gauge.sym.as_ref(), self.null_space.clone()))
    }

    /// Checks the identities the exponent data must satisfy for the triple `t`.
    pub fn check_identities(&self, t: &BdTriple) -> std::result::Result<(), String> {
        let c = build_cartan(t.n).map_err(|e| e.to_string())?;
        let r = c.rank();
        let a = |i: usize, j: usize| self.a_skew.get(i, j).clone();
        let s = |i: usize, j: usize| rat_int(c.sym(i, j));
        if self.a_skew != -&self.a_skew.transpose() {
            return Err("A is not skew-symmetric".into());
        }
        if a_from_b(&c, &self.b) != self.a_skew {
            return Err("A differs from ā(b - b̄)a".into());
        }
        let tau = |i: usize| t.tau(i + 1).map(|x| x - 1);
        for (&i1, &t1) in &t.tau {
            let (i, ti) = (i1 - 1, t1 - 1);
            for m in 0..r {
                let lhs = a(i, m) + a(m, ti) + s(i, m) + s(ti, m);
                if !lhs.is_zero() {
                    return Err(format!("linear equation fails at i={i1}, m={}", m + 1));
                }
                let Some(tm) = tau(m) else { continue };
                let eqs = [
                    a(i, tm) + a(tm, ti) + s(i, tm) + s(ti, tm),
                    a(m, i) + a(i, tm) + s(m, i) + s(tm, i),
                    a(m, ti) + a(ti, tm) + s(m, ti) + s(tm, ti),
                ];
                if let Some(k) = eqs.iter().position(|x| !x.is_zero()) {
                    return Err(format!("equivalent form {k} fails at i={i1}, m={}", m + 1));
                }
                if a(i, m) != a(ti, tm) {
                    return Err(format!("A is not tau-invariant at ({i1}, {})", m + 1));
                }
            }
        }
        Ok(())
    }
}

/// The symmetrized Cartan matrix as rationals.
pub fn symmetrized_cartan(c: &CartanData) -> RatMatrix {
    sym_rat(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sl3_cg() -> BdTriple {
        BdTriple::new(3, [(1, 2)]).unwrap()
    }

    fn sl4_cg() -> BdTriple {
        BdTriple::new(4, [(1, 2), (2, 3)]).unwrap()
    }

    fn rm(rows: &[&[(i64, i64)]]) -> RatMatrix {
        let r = rows.len();
        RatMatrix::from_fn(r, |i, j| rat(rows[i][j].0, rows[i][j].1))
    }

    #[test]
    fn degrees_of_the_examples() {
        assert_eq!(validate_triple(&sl3_cg()).unwrap().degree, 1);
        assert_eq!(validate_triple(&sl4_cg()).unwrap().degree, 2);
        assert_eq!(validate_triple(&BdTriple::empty(4)).unwrap().degree, 0);
    }

    #[test]
    fn identity_map_has_cycle() {
        let t = BdTriple::new(2, [(1, 1)]).unwrap();
        assert_eq!(validate_triple(&t), Err(Error::HasCycle { root: 1, k: 1 }));
    }

    #[test]
    fn non_isometry_is_reported() {
        // α1, α2 are adjacent but their images α1, α3 are not.
        let t = BdTriple::new(4, [(1, 1), (2, 3)]).unwrap();
        assert!(matches!(validate_triple(&t), Err(Error::NotIsometry { .. })));
    }

    #[test]
    fn malformed_triples() {
        assert!(matches!(BdTriple::new(3, [(1, 3)]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(BdTriple::new(4, [(1, 3), (2, 3)]), Err(Error::NotBijective(_))));
        let tau = BTreeMap::from([(1, 2)]);
        assert!(BdTriple::from_parts(3, &[1], &[2], &tau).is_ok());
        assert!(BdTriple::from_parts(3, &[2], &[2], &tau).is_err());
    }

    #[test]
    fn sl3_cg_exponents() {
        let sol = solve_exponents(&sl3_cg()).unwrap();
        assert_eq!(sol.a_skew, rm(&[&[(0, 1), (-1, 1)], &[(1, 1), (0, 1)]]));
        assert_eq!(sol.b, rm(&[&[(0, 1), (-1, 6)], &[(1, 6), (0, 1)]]));
        assert!(sol.null_space.is_empty());
        sol.check_identities(&sl3_cg()).unwrap();
    }

    #[test]
    fn sl4_cg_exponents_follow_the_pattern() {
        let sol = solve_exponents(&sl4_cg()).unwrap();
        let pattern = RatMatrix::from_fn(3, |i, j| {
            rat(i64::from(i == j + 1) - i64::from(j == i + 1), 1)
        });
        assert_eq!(sol.a_skew, pattern);
        sol.check_identities(&sl4_cg()).unwrap();
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_triples(2, DEFAULT_BOUND).unwrap(), vec![BdTriple::empty(2)]);
        let three = enumerate_triples(3, DEFAULT_BOUND).unwrap();
        assert_eq!(
            three,
            vec![BdTriple::empty(3), sl3_cg(), BdTriple::new(3, [(2, 1)]).unwrap()]
        );
        assert_eq!(enumerate_triples(4, DEFAULT_BOUND).unwrap().len(), 9);
        assert!(matches!(enumerate_triples(9, DEFAULT_BOUND), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn derived_triples() {
        let t = sl4_cg();
        assert_eq!(derived_triple(&t, 1).unwrap(), t);
        assert_eq!(derived_triple(&t, 2).unwrap(), BdTriple::new(4, [(1, 3)]).unwrap());
        assert_eq!(derived_triple(&sl3_cg(), 2), Err(Error::OutOfRange { k: 2, degree: 1 }));
    }

    #[test]
    fn tau_on_roots() {
        assert_eq!(tau_on_root(&sl3_cg(), 1, &Root::new(1, 2)), Some(Root::new(2, 3)));
        assert_eq!(tau_on_root(&sl4_cg(), 1, &Root::new(1, 3)), Some(Root::new(2, 4)));
        assert_eq!(tau_on_root(&sl4_cg(), 2, &Root::new(2, 3)), None);
        assert_eq!(tau_on_root(&sl4_cg(), 2, &Root::new(1, 2)), Some(Root::new(3, 4)));
    }

    #[test]
    fn symmetric_gauge_keeps_a() {
        let sol = solve_exponents(&sl3_cg()).unwrap();
        let s = rm(&[&[(1, 2), (1, 4)], &[(1, 4), (1, 2)]]);
        let g = sol
            .with_gauge(3, &Gauge { free: vec![], sym: Some(s) })
            .unwrap();
        assert_eq!(g.a_skew, sol.a_skew);
        g.check_identities(&sl3_cg()).unwrap();
        let asym = rm(&[&[(0, 1), (1, 1)], &[(0, 1), (0, 1)]]);
        assert!(sol.with_gauge(3, &Gauge { free: vec![], sym: Some(asym) }).is_err());
    }
}

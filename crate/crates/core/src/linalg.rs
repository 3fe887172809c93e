//! Dense square matrices over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Field, QRoot, Scalar};

/// Row-major dense square matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

pub type QvMatrix = SquareMatrix<Scalar>;
pub type RatMatrix = SquareMatrix<BigRational>;

/// Rows below this size are multiplied serially.
const PARALLEL_DIM: usize = 16;

impl<T: Field> SquareMatrix<T> {
    pub fn from_vec(dim: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(dim * dim, entries.len()));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, x) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = x;
        }
        m
    }

    /// Matrix unit with a single one at `(r, c)`.
    pub fn unit(dim: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(r, c, T::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: T) {
        self.entries[r * self.dim + c] = x;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Positions `(row, col)` of nonzero entries in row-major order.
    pub fn nonzero_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, _)| (k / self.dim, k % self.dim))
    }

    /// First row-major position where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.dim, other.dim, "comparing matrices of different size");
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.dim, k % self.dim))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let sparse_rows: Vec<Vec<(usize, &T)>> = (0..n)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        let compute_row = |r: usize| -> Vec<T> {
            let mut acc: Vec<Option<T>> = vec![None; n];
            for (k, a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(c, b) in &sparse_rows[k] {
                    let t = a.times(b);
                    acc[c] = Some(match acc[c].take() {
                        Some(s) => s.plus(&t),
                        None => t,
                    });
                }
            }
            acc.into_iter().map(|x| x.unwrap_or_else(T::zero)).collect()
        };
        let rows: Vec<Vec<T>> = if n >= PARALLEL_DIM {
            (0..n).into_par_iter().map(compute_row).collect()
        } else {
            (0..n).map(compute_row).collect()
        };
        Ok(Self {
            dim: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, T::plus))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, T::minus))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| if x.is_zero() { T::zero() } else { s.times(x) })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product; the first factor is the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * m + k, j * m + l, a.times(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `a·b - μ·b·a`.
    pub fn q_commutator(&self, other: &Self, mu: &T) -> Self {
        &(self * other) - &(other * self).scale(mu)
    }

    /// Gauss-Jordan inverse over the field.
    pub fn invert(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .min_by_key(|&r| a[r * n + col].pivot_cost())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                    inv.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a[col * n + col].try_inverse().ok_or(Error::SingularMatrix)?;
            for c in 0..n {
                if !a[col * n + c].is_zero() {
                    a[col * n + c] = a[col * n + c].times(&p);
                }
                if !inv[col * n + c].is_zero() {
                    inv[col * n + c] = inv[col * n + c].times(&p);
                }
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for c in 0..n {
                    let x = &a[col * n + c];
                    if !x.is_zero() {
                        a[r * n + c] = a[r * n + c].minus(&f.times(x));
                    }
                    let y = &inv[col * n + c];
                    if !y.is_zero() {
                        inv[r * n + c] = inv[r * n + c].minus(&f.times(y));
                    }
                }
            }
        }
        Ok(Self { dim: n, entries: inv })
    }

    /// Smallest `m` with `self^m = 0`.
    pub fn nilpotency_order(&self) -> Result<usize> {
        let mut p = self.clone();
        for m in 1..=self.dim.max(1) {
            if p.is_zero() {
                return Ok(m);
            }
            p = &p * self;
        }
        if p.is_zero() {
            Ok(self.dim + 1)
        } else {
            Err(Error::NotNilpotent)
        }
    }

    /// The flip `P` on `V⊗V` with `dim V = n`: `P(x⊗y) = y⊗x`.
    pub fn flip(n: usize) -> Self {
        let mut p = Self::zeros(n * n);
        for k in 0..n {
            for l in 0..n {
                p.set(l * n + k, k * n + l, T::one());
            }
        }
        p
    }

    /// `P·X·P` for `X` on `V⊗V`, computed by index permutation.
    pub fn swap_legs(&self, n: usize) -> Self {
        assert_eq!(self.dim, n * n, "swap_legs expects an operator on V⊗V");
        let sw = |x: usize| (x % n) * n + x / n;
        Self::from_fn(self.dim, |r, c| self.get(sw(r), sw(c)).clone())
    }

    /// Embeds `X` on `V⊗V` into `V⊗V⊗V` acting on the given legs.
    pub fn leg(&self, n: usize, legs: Legs) -> Self {
        assert_eq!(self.dim, n * n, "leg embedding expects an operator on V⊗V");
        match legs {
            Legs::L12 => self.kron(&Self::identity(n)),
            Legs::L23 => Self::identity(n).kron(self),
            Legs::L13 => {
                let mut out = Self::zeros(n * n * n);
                for (r, c) in self.nonzero_positions() {
                    let (a, cc) = (r / n, r % n);
                    let (a2, cc2) = (c / n, c % n);
                    for b in 0..n {
                        out.set((a * n + b) * n + cc, (a2 * n + b) * n + cc2, self.get(r, c).clone());
                    }
                }
                out
            }
        }
    }
}

/// Which two of three tensor slots an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

impl QvMatrix {
    /// Evaluates every entry at `v`; `None` if some entry has a pole there.
    pub fn eval_at(&self, v: &BigRational) -> Option<RatMatrix> {
        let entries = self.entries.iter().map(|x| x.eval(v)).collect::<Option<Vec<_>>>()?;
        Some(SquareMatrix { dim: self.dim, entries })
    }

    /// Substitutes `v -> v^k` entrywise.
    pub fn inflate(&self, k: i64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x.inflate(k)).collect(),
        }
    }

    /// Matrix with constant rational entries.
    pub fn from_rational(m: &RatMatrix) -> Self {
        m.map(|x| Scalar::from_rational(x.clone()))
    }
}

impl<T: Field> Mul for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: &SquareMatrix<T>) -> SquareMatrix<T> {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Field> Add for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn add(self, rhs: &SquareMatrix<T>) -> SquareMatrix<T> {
        self.checked_add(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Field> Sub for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn sub(self, rhs: &SquareMatrix<T>) -> SquareMatrix<T> {
        self.checked_sub(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Field> Neg for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn neg(self) -> SquareMatrix<T> {
        self.map(T::negated)
    }
}

impl<T: Field + fmt::Display> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        Ok(())
    }
}

/// Diagonal matrix `diag(q^{e_0}, ..., q^{e_{dim-1}})` with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalExponentMatrix {
    exponents: Vec<BigRational>,
}

impl DiagonalExponentMatrix {
    pub fn new(exponents: Vec<BigRational>) -> Self {
        Self { exponents }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[BigRational] {
        &self.exponents
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.exponents.iter().map(|e| -e).collect())
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(Self::new(self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect()))
    }

    pub fn materialize(&self, root: QRoot) -> Result<QvMatrix> {
        let diag = self
            .exponents
            .iter()
            .map(|e| root.q_pow(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(SquareMatrix::diagonal(diag))
    }
}

/// Solution set `{particular + Σ t_k·null_space[k]}` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<T> {
    pub particular: Vec<T>,
    pub free_vars: Vec<usize>,
    pub null_space: Vec<Vec<T>>,
}

/// Solves `Σ_j rows[i].0[j]·x_j = rows[i].1` by Gauss-Jordan elimination.
///
/// Free variables are set to zero in the particular solution; `None` means
/// the system is inconsistent.
pub fn solve_linear<T: Field>(rows: &[(Vec<T>, T)], nvars: usize) -> Option<AffineSolution<T>> {
    let mut m: Vec<Vec<T>> = rows
        .iter()
        .filter(|(c, k)| !k.is_zero() || c.iter().any(|x| !x.is_zero()))
        .map(|(c, k)| {
            assert_eq!(c.len(), nvars, "coefficient row has the wrong length");
            let mut r = c.clone();
            r.push(k.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(p) = (rank..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].pivot_cost())
        else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].try_inverse().expect("pivot is nonzero");
        m[rank] = m[rank].iter().map(|x| x.times(&inv)).collect();
        for i in 0..m.len() {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            let (lo, hi) = m.split_at_mut(rank.max(i));
            let (target, src) = if i < rank { (&mut lo[i], &hi[0]) } else { (&mut hi[0], &lo[rank]) };
            for (t, s) in target.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *t = t.minus(&f.times(s));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|r| !r[nvars].is_zero()) {
        return None;
    }
    let mut particular = vec![T::zero(); nvars];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][nvars].clone();
    }
    let free_vars: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let null_space = free_vars
        .iter()
        .map(|&f| {
            let mut v = vec![T::zero(); nvars];
            v[f] = T::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = m[i][f].negated();
            }
            v
        })
        .collect();
    Some(AffineSolution {
        particular,
        free_vars,
        null_space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(dim: usize, xs: &[i64]) -> QvMatrix {
        SquareMatrix::from_vec(dim, xs.iter().map(|&x| Scalar::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn linear_solver_reports_null_space() {
        // x + y = 2, 2x + 2y = 4: one free variable.
        let rows = vec![
            (vec![rat(1, 1), rat(1, 1)], rat(2, 1)),
            (vec![rat(2, 1), rat(2, 1)], rat(4, 1)),
        ];
        let sol = solve_linear(&rows, 2).unwrap();
        assert_eq!(sol.particular, vec![rat(2, 1), rat(0, 1)]);
        assert_eq!(sol.free_vars, vec![1]);
        assert_eq!(sol.null_space, vec![vec![rat(-1, 1), rat(1, 1)]]);
    }

    #[test]
    fn linear_solver_detects_inconsistency() {
        let rows = vec![(vec![rat(1, 1)], rat(1, 1)), (vec![rat(2, 1)], rat(3, 1))];
        assert!(solve_linear(&rows, 1).is_none());
        let zero_eq = vec![(vec![rat(0, 1)], rat(1, 1))];
        assert!(solve_linear(&zero_eq, 1).is_none());
    }

    #[test]
    fn kron_of_identities() {
        let i2 = QvMatrix::identity(2);
        assert!(i2.kron(&i2).is_identity());
    }

    #[test]
    fn kron_of_units() {
        let e12 = QvMatrix::unit(2, 0, 1);
        let e21 = QvMatrix::unit(2, 1, 0);
        let k = e12.kron(&e21);
        assert_eq!(k.nonzero_count(), 1);
        assert!(k.get(1, 2).is_one());
    }

    #[test]
    fn leg13_matches_flip_conjugation() {
        let x = m(4, &[1, 2, 0, 0, 0, 1, 3, 0, 0, 0, 1, 5, 7, 0, 0, 1]);
        let p23 = QvMatrix::identity(2).kron(&QvMatrix::flip(2));
        let expect = &(&p23 * &x.kron(&QvMatrix::identity(2))) * &p23;
        assert_eq!(x.leg(2, Legs::L13), expect);
    }

    #[test]
    fn swap_legs_matches_flip() {
        let x = m(4, &[1, 2, 0, 4, 0, 1, 3, 0, 0, 6, 1, 5, 7, 0, 0, 1]);
        let p = QvMatrix::flip(2);
        assert_eq!(x.swap_legs(2), &(&p * &x) * &p);
    }

    #[test]
    fn inverse_of_diagonal_q_powers() {
        let q = Scalar::v_pow(1);
        let d = QvMatrix::diagonal(vec![q.clone(), Scalar::one(), Scalar::one(), q.clone()]);
        let qi = q.inv().unwrap();
        let expect = QvMatrix::diagonal(vec![qi.clone(), Scalar::one(), Scalar::one(), qi]);
        assert_eq!(d.invert().unwrap(), expect);
    }

    #[test]
    fn inverse_of_unipotent() {
        let n = QvMatrix::unit(3, 0, 2).scale(&Scalar::v_pow(2));
        let u = &QvMatrix::identity(3) + &n;
        assert_eq!(u.invert().unwrap(), &QvMatrix::identity(3) - &n);
        assert!(QvMatrix::identity(4).invert().unwrap().is_identity());
    }

    #[test]
    fn singular_matrix() {
        assert_eq!(m(2, &[1, 2, 2, 4]).invert(), Err(Error::SingularMatrix));
    }

    #[test]
    fn nilpotency_orders() {
        assert_eq!(QvMatrix::zeros(3).nilpotency_order(), Ok(1));
        assert_eq!(QvMatrix::unit(2, 0, 1).nilpotency_order(), Ok(2));
        assert_eq!(QvMatrix::identity(2).nilpotency_order(), Err(Error::NotNilpotent));
        let j = &QvMatrix::unit(3, 0, 1) + &QvMatrix::unit(3, 1, 2);
        assert_eq!(j.nilpotency_order(), Ok(3));
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            QvMatrix::identity(2).checked_mul(&QvMatrix::identity(3)),
            Err(Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn diagonal_exponents_materialize() {
        let d = DiagonalExponentMatrix::new(vec![rat(1, 2), rat(-1, 1)]);
        let mat = d.materialize(QRoot::new(2)).unwrap();
        assert_eq!(mat, QvMatrix::diagonal(vec![Scalar::v_pow(1), Scalar::v_pow(-2)]));
        assert!(d.materialize(QRoot::new(1)).is_err());
        let prod = d.product(&d.inverse()).unwrap();
        assert!(prod.materialize(QRoot::new(1)).unwrap().is_identity());
    }
}

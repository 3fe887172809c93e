//! Cartan data and positive roots of A_{n-1}.

use std::fmt;

use crate::error::{Error, Result};

/// Cartan data of `sl(n)`; indices are 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    n: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
}

impl CartanData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// `a_ij`, 0-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.symmetrizers[i]
    }

    /// `a^{(s)}_ij = d_i a_ij`.
    pub fn sym(&self, i: usize, j: usize) -> i64 {
        self.symmetrizers[i] * self.cartan[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `<α, β>` for roots given by coordinates over the simple roots.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += a[i] * self.sym(i, j) * b[j];
            }
        }
        s
    }
}

/// Cartan data for the A-series algebra `sl(n)`.
pub fn build_cartan(n: usize) -> Result<CartanData> {
    if n < 2 {
        return Err(Error::UnsupportedAlgebra(format!("sl({n}) has no simple roots")));
    }
    let r = n - 1;
    let cartan = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Ok(CartanData {
        n,
        cartan,
        symmetrizers: vec![1; r],
    })
}

/// Builds Cartan data from a series letter and rank; only `A` is supported.
pub fn build_cartan_for(series: char, rank: usize) -> Result<CartanData> {
    match series {
        'A' | 'a' => build_cartan(rank + 1),
        other => Err(Error::UnsupportedAlgebra(format!("{other}_{rank}"))),
    }
}

/// Positive root `α_i + ... + α_{j-1}` of `sl(n)`, written as the pair `(i, j)`, `1 ≤ i < j ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(1 <= i && i < j, "invalid root pair ({i}, {j})");
        Self { i, j }
    }

    /// The simple root `α_k` (1-based).
    pub fn simple(k: usize) -> Self {
        Self::new(k, k + 1)
    }

    pub fn height(&self) -> usize {
        self.j - self.i
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }

    /// 1-based indices of the simple roots in the support.
    pub fn support(&self) -> std::ops::Range<usize> {
        self.i..self.j
    }

    /// Coordinates over the `n - 1` simple roots.
    pub fn coords(&self, n: usize) -> Vec<i64> {
        (1..n).map(|k| i64::from(self.i <= k && k < self.j)).collect()
    }

    /// The sum of two roots, if it is a root.
    pub fn add(&self, other: &Root) -> Option<Root> {
        if self.j == other.i {
            Some(Root::new(self.i, other.j))
        } else if other.j == self.i {
            Some(Root::new(other.i, self.j))
        } else {
            None
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// All positive roots of `sl(n)` in lexicographic order.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Root::new(i, j));
        }
    }
    out
}

/// A total order on the positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalOrder {
    n: usize,
    roots: Vec<Root>,
}

impl NormalOrder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn position(&self, r: &Root) -> usize {
        self.roots.iter().position(|x| x == r).expect("root belongs to the order")
    }

    /// Every sum `α + β` lies strictly between `α` and `β`.
    pub fn is_convex(&self) -> bool {
        for (pa, a) in self.roots.iter().enumerate() {
            for (pb, b) in self.roots.iter().enumerate() {
                if let Some(g) = a.add(b) {
                    let pg = self.position(&g);
                    let (lo, hi) = (pa.min(pb), pa.max(pb));
                    if !(lo < pg && pg < hi) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The lexicographic order on pairs `(i, j)`, which is convex.
pub fn convex_order(n: usize) -> NormalOrder {
    let order = NormalOrder {
        n,
        roots: positive_roots(n),
    };
    assert!(order.is_convex(), "lexicographic order must be convex");
    order
}

/// Splits a composite root into `(α, β)`, `α < β`, along a minimal interval.
///
/// Among all minimal intervals the one with leftmost `α` is returned.
pub fn minimal_interval(order: &NormalOrder, gamma: &Root) -> Result<(Root, Root)> {
    if gamma.is_simple() {
        return Err(Error::NotComposite(gamma.i, gamma.j));
    }
    let decomps: Vec<(usize, usize)> = (gamma.i + 1..gamma.j)
        .map(|k| {
            let (x, y) = (Root::new(gamma.i, k), Root::new(k, gamma.j));
            let (px, py) = (order.position(&x), order.position(&y));
            (px.min(py), px.max(py))
        })
        .collect();
    let minimal = decomps.iter().filter(|&&(lo, hi)| {
        !decomps
            .iter()
            .any(|&(lo2, hi2)| (lo2, hi2) != (lo, hi) && lo <= lo2 && hi2 <= hi)
    });
    let &(lo, hi) = minimal.min_by_key(|d| d.0).expect("a composite root has a decomposition");
    Ok((order.roots[lo], order.roots[hi]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrices() {
        assert_eq!(build_cartan(2).unwrap().matrix(), &[vec![2]]);
        assert_eq!(build_cartan(3).unwrap().matrix(), &[vec![2, -1], vec![-1, 2]]);
        let c = build_cartan(4).unwrap();
        assert_eq!(c.matrix(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert!(matches!(build_cartan(1), Err(Error::UnsupportedAlgebra(_))));
        assert!(matches!(build_cartan_for('B', 2), Err(Error::UnsupportedAlgebra(_))));
    }

    #[test]
    fn lexicographic_orders() {
        assert_eq!(convex_order(2).roots(), &[Root::new(1, 2)]);
        assert_eq!(convex_order(3).roots(), &[Root::new(1, 2), Root::new(1, 3), Root::new(2, 3)]);
        let four: Vec<(usize, usize)> = convex_order(4).roots().iter().map(|r| (r.i, r.j)).collect();
        assert_eq!(four, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn non_convex_order_is_detected() {
        let bad = NormalOrder {
            n: 3,
            roots: vec![Root::new(1, 2), Root::new(2, 3), Root::new(1, 3)],
        };
        assert!(!bad.is_convex());
    }

    #[test]
    fn intervals() {
        let o3 = convex_order(3);
        assert_eq!(minimal_interval(&o3, &Root::new(1, 3)).unwrap(), (Root::new(1, 2), Root::new(2, 3)));
        let o4 = convex_order(4);
        assert_eq!(minimal_interval(&o4, &Root::new(2, 4)).unwrap(), (Root::new(2, 3), Root::new(3, 4)));
        assert_eq!(minimal_interval(&o4, &Root::new(1, 2)), Err(Error::NotComposite(1, 2)));
    }

    #[test]
    fn roots_have_norm_two() {
        let c = build_cartan(5).unwrap();
        for r in positive_roots(5) {
            let x = r.coords(5);
            assert_eq!(c.inner(&x, &x), 2);
        }
    }
}

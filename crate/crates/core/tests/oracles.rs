//! Closed-form values checked against objects built independently here.

use bdtwist::linalg::{QvMatrix, RatMatrix};
use bdtwist::rep::{classical_r, symmetric_part, Session};
use bdtwist::scalar::Scalar;
use bdtwist::triples::{enumerate_triples, BdTriple};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Split Casimir of sl(n) in the fundamental representation: `P - I/n`.
fn split_casimir(n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i * n + j, j * n + i, rat(1, 1));
        }
    }
    for k in 0..n * n {
        let x = m.get(k, k) - rat(1, n as i64);
        m.set(k, k, x);
    }
    m
}

#[test]
fn symmetric_part_is_a_multiple_of_the_casimir() {
    for t in (2..=4).flat_map(|n| enumerate_triples(n, 8).unwrap()) {
        let s = Session::canonical(&t).unwrap();
        let n = s.n();
        let sym = symmetric_part(&classical_r(&s.r, s.denominator()).unwrap(), n);
        let omega = split_casimir(n);
        // Any off-diagonal entry of P fixes the scale.
        let c = sym.get(1, n).clone();
        assert!(!c.is_zero(), "{t}");
        let scaled = RatMatrix::from_fn(n * n, |r, col| omega.get(r, col) * &c);
        assert_eq!(sym, scaled, "{t}");
    }
}

/// `(PR - cq)(PR + cq^{-1}) = 0` with `c = R_{00,00}/q`, written out without the library's Hecke helper.
#[test]
fn braid_operator_satisfies_hecke_relation() {
    for t in (2..=4).flat_map(|n| enumerate_triples(n, 8).unwrap()) {
        let s = Session::canonical(&t).unwrap();
        let n = s.n();
        let mut p = QvMatrix::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                p.set(i * n + j, j * n + i, Scalar::one());
            }
        }
        let pr = &p * &s.r;
        let id = QvMatrix::identity(n * n);
        let c = &s.r.get(0, 0).clone() / &s.root.q();
        let q = &c * &s.root.q();
        let qinv = &c * &s.root.q().inv().unwrap();
        let lhs = &(&pr - &id.scale(&q)) * &(&pr + &id.scale(&qinv));
        assert!(lhs.is_zero(), "{t}");
    }
}

/// The standard R-matrix of sl(2) in its textbook form.
#[test]
fn sl2_standard_r_closed_form() {
    let s = Session::canonical(&BdTriple::empty(2)).unwrap();
    let q = s.root.q();
    let lam = s.root.lambda();
    let one = Scalar::one();
    let z = Scalar::zero();
    // basis order 00, 01, 10, 11
    let scale = s.r.get(0, 0).clone();
    let expect = QvMatrix::from_vec(
        4,
        vec![
            q.clone(), z.clone(), z.clone(), z.clone(),
            z.clone(), one.clone(), lam.clone(), z.clone(),
            z.clone(), z.clone(), one.clone(), z.clone(),
            z.clone(), z.clone(), z.clone(), q.clone(),
        ],
    )
    .unwrap();
    let normalized = s.r.scale(&(&q / &scale));
    let transposed = expect.transpose();
    assert!(normalized == expect || normalized == transposed, "R = {normalized:?}");
}

#[test]
fn sl3_cremmer_gervais_twist_is_nontrivial_and_unit_triangular() {
    let s = Session::canonical(&BdTriple::new(3, [(1, 2)]).unwrap()).unwrap();
    let k_inv = s.twist.k.invert().unwrap();
    let unip = &s.twist.f * &k_inv;
    let nil = &unip - &QvMatrix::identity(9);
    assert!(!nil.is_zero());
    assert!((&nil * &nil).is_zero());
    assert_eq!(nil.nonzero_count(), 1);
}

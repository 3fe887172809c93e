use bdtwist::json;
use bdtwist::linalg::{QvMatrix, RatMatrix};
use bdtwist::rep::{Session, SessionConfig};
use bdtwist::scalar::{LaurentPoly, Scalar};
use bdtwist::triples::{candidate_triples, enumerate_triples, solve_exponents, validate_triple, BdTriple, Gauge};
use bdtwist::verify;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5, 1i64..=3), 0..4)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, p, q)| (e, rat(p, q)))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            Scalar::from_poly(n)
        } else {
            Scalar::new(n, d).unwrap()
        }
    })
}

/// Upper unitriangular `n×n` matrix with small monomial entries.
fn unipotent(n: usize) -> impl Strategy<Value = QvMatrix> {
    prop::collection::vec((-3i64..=3, -3i64..=3), n * n).prop_map(move |cs| {
        QvMatrix::from_fn(n, |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Equal => Scalar::one(),
            std::cmp::Ordering::Less => {
                let (k, e) = cs[r * n + c];
                &Scalar::from_int(k) * &Scalar::v_pow(e)
            }
            std::cmp::Ordering::Greater => Scalar::zero(),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        let v = rat(3, 2);
        if let (Some(x), Some(y)) = (a.eval(&v), b.eval(&v)) {
            prop_assert_eq!((&a * &b).eval(&v), Some(&x * &y));
            prop_assert_eq!((&a + &b).eval(&v), Some(&x + &y));
        }
    }

    #[test]
    fn scalar_json_round_trip(a in scalar(), d in 1u64..=6) {
        let v = json::scalar_to_json(&a, d);
        prop_assert_eq!(json::scalar_from_json(&v).unwrap(), (a, d));
    }

    #[test]
    fn matrix_json_round_trip(m in unipotent(3), d in 1u64..=4) {
        let text = json::matrix_to_json(&m, d).to_string();
        prop_assert_eq!(json::parse_matrix(&text).unwrap(), (m, d));
    }

    #[test]
    fn unipotent_inverse(m in unipotent(4)) {
        let inv = m.invert().unwrap();
        prop_assert!((&m * &inv).is_identity());
        prop_assert!((&inv * &m).is_identity());
        let nil = &m - &QvMatrix::identity(4);
        prop_assert!(nil.nilpotency_order().unwrap() <= 4);
    }

    #[test]
    fn kron_mixed_product(a in unipotent(2), b in unipotent(2), c in unipotent(2), d in unipotent(2)) {
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn parsers_never_panic(s in ".{0,64}") {
        let _ = json::parse_scalar(&s);
        let _ = json::parse_matrix(&s);
        let _ = json::parse_triple(&s);
        let _ = json::parse_twist(&s);
        let _ = json::parse_solution(&s);
        let _ = json::parse_gauge(&s);
    }

    #[test]
    fn structured_garbage_is_rejected_cleanly(
        n in 0usize..70, pairs in prop::collection::vec((0usize..8, 0usize..8), 0..6)
    ) {
        let tau: serde_json::Map<String, serde_json::Value> =
            pairs.iter().map(|(a, b)| (a.to_string(), serde_json::json!(b))).collect();
        let text = serde_json::json!({"n": n, "tau": tau}).to_string();
        if let Ok(t) = json::parse_triple(&text) {
            let back = json::parse_triple(&json::triple_to_json(&t).to_string()).unwrap();
            prop_assert_eq!(back, t);
        }
    }

    #[test]
    fn validity_iff_solvable(n in 2usize..=5, pick in any::<prop::sample::Index>()) {
        let all = candidate_triples(n);
        let t = &all[pick.index(all.len())];
        prop_assert_eq!(validate_triple(t).is_ok(), solve_exponents(t).is_ok());
    }
}

fn gauged_session(t: &BdTriple, s: &[(i64, i64)]) -> Session {
    let r = t.n() - 1;
    let sym = RatMatrix::from_fn(r, |i, j| {
        let (p, q) = s[i.min(j) * 3 + i.max(j)];
        rat(p, q)
    });
    Session::new(t, SessionConfig { gauge: Gauge { free: Vec::new(), sym: Some(sym) }, extra_denominator: 1 }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn qybe_and_cocycle_under_random_symmetric_gauge(
        pick in any::<prop::sample::Index>(),
        s in prop::collection::vec((-2i64..=2, 1i64..=3), 9)
    ) {
        let all: Vec<BdTriple> = (2..=4).flat_map(|n| enumerate_triples(n, 8).unwrap()).collect();
        let t = &all[pick.index(all.len())];
        let session = gauged_session(t, &s);
        let ctx = t.to_string();
        let r = verify::check_qybe(&session.r, &ctx, None);
        prop_assert!(r.passed(), "{}", r.to_json());
        let c = verify::check_cocycle(&session, bdtwist::rep::Coproduct::Standard, None);
        prop_assert!(c.passed(), "{}", c.to_json());
    }

    #[test]
    fn free_parameters_keep_qybe(pick in any::<prop::sample::Index>(), p in -2i64..=2, q in 1i64..=2) {
        let all: Vec<BdTriple> = (3..=4).flat_map(|n| enumerate_triples(n, 8).unwrap()).collect();
        let t = &all[pick.index(all.len())];
        let k = solve_exponents(t).unwrap().null_space.len();
        let gauge = Gauge { free: vec![rat(p, q); k], sym: None };
        let session = Session::new(t, SessionConfig { gauge, extra_denominator: 1 }).unwrap();
        let r = verify::check_qybe(&session.r, &t.to_string(), None);
        prop_assert!(r.passed(), "{}", r.to_json());
    }
}

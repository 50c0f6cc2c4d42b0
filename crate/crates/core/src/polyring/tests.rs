use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::ring::BundleRing;

fn ring3() -> BundleRing {
    BundleRing::new(3).unwrap()
}

fn v(ring: &BundleRing, name: &str) -> Polynomial {
    ring.var_poly(ring.table().lookup(name).unwrap())
}

fn k(ring: &BundleRing, n: i64) -> Polynomial {
    Polynomial::constant(ring.table(), rat(n, 1))
}

#[test]
fn arith_examples() {
    let r = ring3();
    let (u1, u2) = (v(&r, "u1"), v(&r, "u2"));
    assert_eq!(&u1 + &u2 + (&u1 - &u2), k(&r, 2) * &u1);

    let (y, q1, q2) = (v(&r, "y"), v(&r, "q1"), v(&r, "q2"));
    let lhs = (r.one() + &y) * (r.one() + &q1 + &q2);
    let expected = r.one() + &y + &q1 + &q2 + &y * &q1 + &y * &q2;
    assert_eq!(lhs, expected);

    let p = &u1 * &u2 + k(&r, 5);
    assert!((&p * &r.zero()).is_zero());
    assert_eq!(poly_arith(&p, &r.zero(), ArithOp::Mul).unwrap(), r.zero());
}

#[test]
fn table_mismatch_is_an_error() {
    let a = ring3().one();
    let b = BundleRing::new(2).unwrap().one();
    assert_eq!(poly_arith(&a, &b, ArithOp::Add), Err(Error::TableMismatch));
    assert_eq!(a.checked_mul(&b), Err(Error::TableMismatch));
    // structurally equal tables are interchangeable
    assert!(a.checked_add(&ring3().one()).is_ok());
}

#[test]
fn truncate_examples() {
    let r = ring3();
    let u1 = v(&r, "u1");
    let p = r.one() + &u1 + &u1 * &u1;
    assert_eq!(truncate(&p, 1), r.one() + &u1);
    assert_eq!(truncate(&(k(&r, 7) + &u1), 0), k(&r, 7));
    let c1 = v(&r, "c1");
    assert!(truncate(&(v(&r, "c2") + &c1 * &c1), 1).is_zero());
}

#[test]
fn substitute_examples() {
    let r = ring3();
    let (y, u2, u3, q1) = (v(&r, "y"), v(&r, "u2"), v(&r, "u3"), v(&r, "q1"));
    let mut s = Substitution::new(r.table(), r.table());
    s.set(r.y(), u2.clone()).unwrap();
    assert_eq!(substitute(&(&y * &y), &s).unwrap(), &u2 * &u2);

    let p = &y * &q1 + k(&r, 3) * v(&r, "c2");
    assert_eq!(
        substitute(&p, &Substitution::identity(r.table())).unwrap(),
        p
    );

    let mut s = Substitution::new(r.table(), r.table());
    s.set(r.q(1), &u2 + &u3).unwrap();
    assert_eq!(substitute(&q1, &s).unwrap(), &u2 + &u3);
}

#[test]
fn substitute_errors() {
    let r = ring3();
    let s = Substitution::new(r.table(), r.table());
    assert_eq!(
        substitute(&v(&r, "y"), &s),
        Err(Error::UnboundVariable("y".into()))
    );
    let mut s = Substitution::new(r.table(), r.table());
    s.set(r.q(2), v(&r, "u1")).unwrap();
    assert!(matches!(
        substitute(&v(&r, "q2"), &s),
        Err(Error::Grading { expected: 2, .. })
    ));
    // constants need no images
    assert_eq!(substitute(&k(&r, 4), &s).unwrap(), k(&r, 4));
}

#[test]
fn divide_exact_linear_examples() {
    let r = ring3();
    let (u1, u2, u3) = (v(&r, "u1"), v(&r, "u2"), v(&r, "u3"));
    let p = (&u2 - &u1) * (&u3 - &u1);
    assert_eq!(divide_exact_linear(&p, &(&u2 - &u1)).unwrap(), &u3 - &u1);
    // also by the oppositely oriented factor
    assert_eq!(divide_exact_linear(&p, &(&u1 - &u2)).unwrap(), &u1 - &u3);

    let sq = &u1 * &u1 - &u2 * &u2;
    assert_eq!(divide_exact_linear(&sq, &(&u1 - &u2)).unwrap(), &u1 + &u2);

    assert!(matches!(
        divide_exact_linear(&(&u1 + &u2), &(&u1 - &u2)),
        Err(Error::NotDivisible { .. })
    ));
    assert!(matches!(
        divide_exact_linear(&u1, &(&u1 + &u2)),
        Err(Error::BadLinearFactor(_))
    ));
    assert!(matches!(
        divide_exact_linear(&u1, &(v(&r, "c2") - &u2)),
        Err(Error::BadLinearFactor(_))
    ));
    assert!(divide_exact_linear(&r.zero(), &(&u1 - &u2))
        .unwrap()
        .is_zero());
}

#[test]
fn series_inverse_examples() {
    let r = ring3();
    let x = v(&r, "x");
    let geo = r.one() + &x + &x * &x + x.pow(3);
    assert_eq!(series_inverse(&(r.one() - &x), 3).unwrap(), geo);
    assert_eq!(series_inverse(&r.one(), 6).unwrap(), r.one());

    // Segre class of a rank-3 bundle through degree 3
    let (c1, c2, c3) = (v(&r, "c1"), v(&r, "c2"), v(&r, "c3"));
    let s = series_inverse(&r.total_chern(), 3).unwrap();
    let expected = r.one() - &c1 + (&c1 * &c1 - &c2) + (-(c1.pow(3)) + k(&r, 2) * &c1 * &c2 - &c3);
    assert_eq!(s, expected);
    assert_eq!(truncate(&(&s * &r.total_chern()), 3), r.one());

    assert!(matches!(
        series_inverse(&x, 4),
        Err(Error::NotInvertible(_))
    ));
    let half = series_inverse(&(k(&r, 2) + &x), 1).unwrap();
    assert_eq!(
        half,
        Polynomial::constant(r.table(), rat(1, 2)) - x.scale(&rat(1, 4))
    );
}

#[test]
fn grade_decompose_examples() {
    let r = ring3();
    let c1 = v(&r, "c1");
    let c2 = v(&r, "c2");
    let p = r.one() + &c1 + &c1 * &c1;
    assert_eq!(
        grade_decompose(&p),
        vec![(0, r.one()), (1, c1.clone()), (2, &c1 * &c1)]
    );
    assert!(grade_decompose(&r.zero()).is_empty());
    let q = &c2 + &c1 * &c1;
    assert_eq!(grade_decompose(&q), vec![(2, q.clone())]);
}

#[test]
fn canonical_rendering() {
    let r = ring3();
    let (c1, c2, c3) = (v(&r, "c1"), v(&r, "c2"), v(&r, "c3"));
    let p = -(c1.pow(3)) + k(&r, 2) * &c1 * &c2 - &c3 + r.one();
    assert_eq!(p.to_string(), "-c1^3 + 2 c1 c2 - c3 + 1");
    let q = c1.scale(&rat(-1, 2)) + v(&r, "u1").pow(2);
    assert_eq!(q.to_string(), "u1^2 - 1/2 c1");
    assert_eq!(r.zero().to_string(), "0");
    assert_eq!(to_tex(&q), "u_{1}^{2} - \\frac{1}{2} c_{1}");
    assert_eq!(k(&r, -3).to_string(), "-3");
}

#[test]
fn pow_truncated_matches_truncated_pow() {
    let r = ring3();
    let p = r.one() + v(&r, "u1") + v(&r, "c2");
    for e in 0..6 {
        assert_eq!(pow_truncated(&p, e, 4), truncate(&p.pow(e), 4));
    }
}

// Random polynomials over the rank-3 table, restricted to the generators
// u1..u3 and c1..c3 so that substitution images below can be built.
fn arb_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let term = (
        proptest::collection::vec(0..=max_exp, 6),
        -9i64..=9,
        1i64..=4,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(|terms| {
        let r = ring3();
        let vars = [r.u(1), r.u(2), r.u(3), r.c(1), r.c(2), r.c(3)];
        Polynomial::from_terms(
            r.table(),
            terms.into_iter().map(|(exps, n, d)| {
                (
                    Monomial::from_exponents(vars.iter().copied().zip(exps)),
                    rat(n, d),
                )
            }),
        )
    })
}

fn with_unit_constant(p: Polynomial) -> Polynomial {
    let c = p.constant_term();
    &p - &Polynomial::constant(p.table(), c) + Polynomial::one(p.table())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(5, 2), b in arb_poly(5, 2), c in arb_poly(5, 2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn truncation_laws(a in arb_poly(6, 3), b in arb_poly(6, 3), d in 0u32..8) {
        let ta = truncate(&a, d);
        prop_assert_eq!(truncate(&ta, d), ta.clone());
        prop_assert_eq!(truncate(&(&a + &b), d), &ta + &truncate(&b, d));
        prop_assert_eq!(
            truncate(&(&a * &b), d),
            truncate(&(&ta * &truncate(&b, d)), d)
        );
        prop_assert_eq!(a.mul_truncated(&b, d).unwrap(), truncate(&(&a * &b), d));
    }

    #[test]
    fn substitution_is_a_ring_map(a in arb_poly(4, 2), b in arb_poly(4, 2)) {
        // u_i -> permuted roots, c_i -> elementary symmetric in the roots
        let r = ring3();
        let (u1, u2, u3) = (r.var_poly(r.u(1)), r.var_poly(r.u(2)), r.var_poly(r.u(3)));
        let mut s = Substitution::new(r.table(), r.table());
        s.set(r.u(1), u3.clone()).unwrap();
        s.set(r.u(2), &u1 - &u2 + &u3).unwrap();
        s.set(r.u(3), u2.clone()).unwrap();
        s.set(r.c(1), &u1 + &u2 + &u3).unwrap();
        s.set(r.c(2), &u1 * &u2 + &u1 * &u3 + &u2 * &u3).unwrap();
        s.set(r.c(3), &u1 * &u2 * &u3).unwrap();
        let lhs = substitute(&(&a * &b), &s).unwrap();
        let rhs = &substitute(&a, &s).unwrap() * &substitute(&b, &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_division_inverts_multiplication(p in arb_poly(6, 3), i in 1usize..=3, j in 1usize..=3) {
        prop_assume!(i != j);
        let r = ring3();
        let f = r.var_poly(r.u(i)) - r.var_poly(r.u(j));
        let q = divide_exact_linear(&(&p * &f), &f).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn series_inverse_is_an_inverse(p in arb_poly(5, 2), d in 0u32..7) {
        let p = with_unit_constant(p);
        let s = series_inverse(&p, d).unwrap();
        prop_assert_eq!(truncate(&(&p * &s), d), Polynomial::one(p.table()));
        prop_assert_eq!(truncate(&s, d), s);
    }

    #[test]
    fn grades_sum_back(p in arb_poly(8, 3)) {
        let parts = grade_decompose(&p);
        let mut sum = Polynomial::zero(p.table());
        let mut last = None;
        for (d, g) in parts {
            prop_assert!(g.is_homogeneous_of(d));
            prop_assert!(last.is_none_or(|l| l < d));
            last = Some(d);
            sum = sum + g;
        }
        prop_assert_eq!(sum, p);
    }
}

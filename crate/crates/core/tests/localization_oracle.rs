use pushkit_core::localization::Localizer;
use pushkit_core::polyring::{grade_decompose, truncate};
use pushkit_core::symfun::{complete_homogeneous, is_symmetric};
use pushkit_core::{localize, BundleRing, Polynomial};
use pushkit_testkit::random::random_fiber_class;
use pushkit_testkit::{brute_force_localize, complete_by_enumeration, elementary_by_subsets};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn brute_force_oracle_reproduces_small_cases() {
    let ring = BundleRing::new(3).unwrap();
    let y = ring.var_poly(ring.y());
    assert_eq!(brute_force_localize(&ring, &(&y * &y)).unwrap(), ring.one());
    assert!(brute_force_localize(&ring, &ring.one()).unwrap().is_zero());
}

#[test]
fn power_family_against_brute_force() {
    // localize(y^(r-1+m)) = (-1)^(r-1) h_m, and y^k for k < r-1 vanishes
    for r in 1..=5usize {
        let ring = BundleRing::new(r).unwrap();
        let localizer = Localizer::new(&ring).unwrap();
        let y = ring.var_poly(ring.y());
        let top = (r - 1) as u32;
        for k in 0..top {
            assert!(localizer.localize(&y.pow(k), None).unwrap().value.is_zero());
        }
        for m in 0..=5u32 {
            let phi = y.pow(top + m);
            let fast = localizer.localize(&phi, None).unwrap().value;
            let slow = brute_force_localize(&ring, &phi).unwrap();
            assert_eq!(fast, slow, "r={r} m={m}");
            let h = complete_by_enumeration(&ring, m, &ring.roots());
            assert_eq!(
                h,
                complete_homogeneous(ring.table(), m as usize, &ring.roots())
            );
            let sign = if r % 2 == 1 { h.clone() } else { -h.clone() };
            assert_eq!(fast, sign, "r={r} m={m}");
        }
    }
}

#[test]
fn random_fiber_classes_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10ca1);
    for case in 0..60 {
        let r = 1 + case % 4;
        let ring = BundleRing::new(r).unwrap();
        let phi = random_fiber_class(&mut rng, &ring, 4, 6);
        let fast = localize(&ring, &phi, None).unwrap();
        let slow = brute_force_localize(&ring, &phi).expect("fixed-point sum is a polynomial");
        assert_eq!(fast.value, slow, "r={r} phi={phi}");
        assert!(is_symmetric(&ring, &fast.value));
    }
}

#[test]
fn degree_shift_and_integrality() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..80 {
        let r = 1 + case % 5;
        let ring = BundleRing::new(r).unwrap();
        let phi = random_fiber_class(&mut rng, &ring, 5, 8);
        let out = localize(&ring, &phi, None).expect("zero remainders");
        assert!(is_symmetric(&ring, &out.value));
        let shift = (r - 1) as u32;
        for (d, part) in grade_decompose(&phi) {
            let pushed = localize(&ring, &part, None).unwrap().value;
            if d < shift {
                assert!(pushed.is_zero());
            } else {
                assert!(pushed.is_homogeneous_of(d - shift), "r={r} d={d}");
            }
        }
    }
}

#[test]
fn truncation_contract() {
    // expand-then-restrict at cutoff D agrees with the exact answer through D-(r-1)
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..30 {
        let r = 2 + case % 3;
        let ring = BundleRing::new(r).unwrap();
        let phi = random_fiber_class(&mut rng, &ring, 5, 8);
        let d = 6;
        let exact = localize(&ring, &phi, None).unwrap().value;
        let cut = localize(&ring, &phi, Some(d)).unwrap();
        assert_eq!(cut.valid_through, Some(d - (r as u32 - 1)));
        assert_eq!(cut.value, truncate(&exact, d - (r as u32 - 1)));
    }
}

#[test]
fn chart_restrictions_match_hand_built_ones() {
    for r in 1..=5 {
        let ring = BundleRing::new(r).unwrap();
        let localizer = Localizer::new(&ring).unwrap();
        let roots = ring.roots();
        for chart in localizer.charts() {
            let j = chart.index;
            let others: Vec<_> = roots.iter().copied().filter(|&v| v != ring.u(j)).collect();
            for i in 1..r {
                assert_eq!(
                    chart.restrict(&ring.var_poly(ring.q(i))).unwrap(),
                    elementary_by_subsets(&ring, i, &others)
                );
            }
            let euler = others.iter().fold(ring.one(), |acc, &v| {
                acc * (ring.var_poly(v) - ring.var_poly(ring.u(j)))
            });
            assert_eq!(chart.euler, euler);
            assert!(chart.euler.is_homogeneous_of((r - 1) as u32));
            assert!(!chart.euler.is_zero());
        }
        assert_eq!(
            localizer.vandermonde().len(),
            (1..=r).product::<usize>(),
            "Vandermonde determinant has r! terms"
        );
    }
}

#[test]
fn constant_zero_and_unit() {
    let ring = BundleRing::new(4).unwrap();
    assert!(localize(&ring, &Polynomial::zero(ring.table()), None)
        .unwrap()
        .value
        .is_zero());
    let x = ring.var_poly(ring.x());
    assert_eq!(localize(&ring, &x.pow(3), None).unwrap().value, ring.one());
}

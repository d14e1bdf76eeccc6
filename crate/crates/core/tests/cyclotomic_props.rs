use dwcalc::cyclotomic::{Cyclotomic, RootOfUnity};
use num_rational::BigRational;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 20]),
        prop::collection::vec((-6i64..=6, 1i64..=4), 1..8),
    )
        .prop_map(|(n, terms)| {
            terms
                .iter()
                .enumerate()
                .map(|(k, &(num, den))| {
                    Cyclotomic::from_root(n, k as i64 * 5 + num).scale(&BigRational::new(num.into(), den.into()))
                })
                .sum()
        })
}

fn close(a: &Cyclotomic, b: &Cyclotomic) -> bool {
    a.to_complex().dist(&b.to_complex()) < 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in element(), y in element(), z in element()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Cyclotomic::one(), x.clone());
    }

    #[test]
    fn arithmetic_matches_floating_point(x in element(), y in element()) {
        let (a, b) = (x.to_complex(), y.to_complex());
        let s = (&x + &y).to_complex();
        let p = (&x * &y).to_complex();
        prop_assert!((s.re - a.re - b.re).abs() < 1e-9 && (s.im - a.im - b.im).abs() < 1e-9);
        prop_assert!((p.re - (a.re * b.re - a.im * b.im)).abs() < 1e-8);
        prop_assert!((p.im - (a.re * b.im + a.im * b.re)).abs() < 1e-8);
        let c = x.conjugate().to_complex();
        prop_assert!((c.re - a.re).abs() < 1e-9 && (c.im + a.im).abs() < 1e-9);
    }

    #[test]
    fn representation_is_canonical(x in element(), k in 1u32..=4) {
        let big = x.embed(x.order() * k);
        prop_assert_eq!(&big, &x);
        prop_assert_eq!(big.coeffs().len(), dwcalc::cyclotomic::field_degree(big.order()));
        let min = big.minimal_order();
        prop_assert_eq!(&min, &x);
        prop_assert!(min.order() <= x.order());
        prop_assert_eq!(min.to_string(), x.minimal_order().to_string());
        let rebuilt = Cyclotomic::from_coeffs(x.order(), x.coeffs().to_vec()).unwrap();
        prop_assert_eq!(rebuilt, x.clone());
    }

    #[test]
    fn json_round_trip(x in element()) {
        let text = serde_json::to_string(&x).unwrap();
        let back: Cyclotomic = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn roots_have_unit_modulus(n in 1u32..=200, k in -500i64..500) {
        let r = RootOfUnity::new(n, k);
        prop_assert!((r.to_complex().norm_sqr() - 1.0).abs() < 1e-9);
        prop_assert!(close(&r.to_cyclotomic(), &Cyclotomic::from_root(n, k)));
        prop_assert!((r * r.inv()).is_one());
        prop_assert_eq!(r.pow(n as i64), RootOfUnity::one());
        let c = r.to_cyclotomic();
        prop_assert!((&c * &c.conjugate()).is_one());
    }

    #[test]
    fn root_multiplication_adds_exponents(n in 1u32..=60, a in -100i64..100, b in -100i64..100) {
        let lhs = Cyclotomic::from_root(n, a) * Cyclotomic::from_root(n, b);
        prop_assert_eq!(lhs, Cyclotomic::from_root(n, a + b));
        prop_assert_eq!(RootOfUnity::new(n, a) * RootOfUnity::new(n, b), RootOfUnity::new(n, a + b));
    }
}

#[test]
fn documented_values() {
    assert!(Cyclotomic::from_root(1, 0).is_one());
    assert_eq!(
        Cyclotomic::from_root(3, 1) + Cyclotomic::from_root(3, 2),
        Cyclotomic::from_integer(-1)
    );
    assert_eq!(Cyclotomic::from_root(4, 1).pow(2), Cyclotomic::from_integer(-1));
    assert_eq!(
        Cyclotomic::from_root(9, 3) * Cyclotomic::from_root(9, 3),
        Cyclotomic::from_root(3, 2)
    );
    assert_eq!(Cyclotomic::from_root(5, 1).conjugate(), Cyclotomic::from_root(5, 4));
    let c = Cyclotomic::from_root(3, 1)
        .scale(&BigRational::new(1.into(), 3.into()))
        .to_complex();
    assert!((c.re + 1.0 / 6.0).abs() < 1e-9 && (c.im - 3f64.sqrt() / 6.0).abs() < 1e-9);
    assert!(Cyclotomic::one()
        .div_rational(&BigRational::new(0.into(), 1.into()))
        .is_err());
}

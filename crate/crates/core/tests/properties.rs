use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use circleforge::hpnum::{ComplexHP, Real};
use circleforge::kloosterman::{classical_terms, modified_terms, rewritten_terms, KloostermanSpec};
use circleforge::modular::{farey_neighbors, omega_canonical, strengthened_inverse, RootOfUnity};
use circleforge::qseries::{partition_series, SeriesName, TruncatedSeries};
use circleforge::transform::{check_law, evaluate_at, LawId};

fn coprime_pair(kmax: i64) -> impl Strategy<Value = (i64, i64)> {
    (1..=kmax).prop_flat_map(|k| (0..k, Just(k))).prop_filter("coprime", |(h, k)| h.gcd(k) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_inverse_is_two_sided(c in prop::collection::vec(-20i64..20, 1..25), sign in prop::bool::ANY) {
        let mut c = c;
        c[0] = if sign { 1 } else { -1 };
        let order = 30;
        let a = TruncatedSeries::<BigInt>::from_i64s(&c, order);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv), TruncatedSeries::one(order));
        prop_assert_eq!(inv.mul(&a), TruncatedSeries::one(order));
    }

    #[test]
    fn roots_of_unity_form_a_group(a in -50i64..50, b in 1i64..60, c in -50i64..50, d in 1i64..60, e in -10i64..10) {
        let x = RootOfUnity::new(a, b);
        let y = RootOfUnity::new(c, d);
        prop_assert!((x * x.inv()).is_one());
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x.pow(e) * x, x.pow(e + 1));
        prop_assert!(x.pow(x.order()).is_one());
        let z = x.to_complex(64);
        prop_assert!((z.abs().to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn strengthened_inverse_property((h, k) in coprime_pair(200)) {
        let s = strengthened_inverse(h, k).unwrap();
        prop_assert_eq!(s.modulus % k, 0);
        prop_assert_eq!((h * s.hprime).rem_euclid(s.modulus), s.modulus - 1);
        prop_assert!(s.hprime >= 0 && s.hprime < s.modulus);
    }

    #[test]
    fn multiplier_is_a_24k_th_root((h, k) in coprime_pair(150)) {
        let w = omega_canonical(h, k).unwrap();
        prop_assert!(w.pow(24 * k).is_one());
        // periodic in h with period k
        prop_assert_eq!(w, omega_canonical(h + k, k).unwrap());
    }

    #[test]
    fn farey_neighbours_are_unimodular((h, k) in coprime_pair(40), extra in 0i64..20) {
        let a = farey_neighbors(h, k, k + extra).unwrap();
        prop_assert!(a.is_unimodular());
        prop_assert!(a.within_envelope());
    }

    #[test]
    fn classical_sums_are_real_and_symmetric(k in 1i64..40, n in -20i64..20, m in -20i64..20) {
        let s = classical_terms(k, n, m, None).unwrap();
        prop_assert!(s.exact_eq(&s.conj()));
        prop_assert!(s.exact_eq(&classical_terms(k, m, n, None).unwrap()));
    }

    #[test]
    fn modified_sums_are_periodic_in_n(k in 1i64..30, j in 1i64..=3, nu in 1i64..30, n in 0i64..15, m in 0i64..15) {
        let nu = if j == 2 { Some(1 + nu % k) } else { None };
        let a = modified_terms(&KloostermanSpec::modified(j, k, nu, n, m)).unwrap();
        let b = modified_terms(&KloostermanSpec::modified(j, k, nu, n + k, m)).unwrap();
        prop_assert!(a.exact_eq(&b));
    }

    #[test]
    fn rewrites_agree(k in 1i64..36, j in 1i64..=3, nu in 1i64..36, n in -10i64..25, m in -10i64..25) {
        let nu = if j == 2 { Some(1 + nu % k) } else { None };
        let s = KloostermanSpec::modified(j, k, nu, n, m);
        prop_assert!(modified_terms(&s).unwrap().exact_eq(&rewritten_terms(&s).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn partition_value_matches_coefficients(re in -0.3f64..0.3, im in -0.3f64..0.3) {
        let p = 128;
        let q = ComplexHP::new(Real::from_f64(re, p), Real::from_f64(im, p));
        let s = partition_series(150);
        let mut acc = ComplexHP::zero(p);
        let mut qn = ComplexHP::one(p);
        for c in s.coeffs() {
            acc = &acc + &qn.scale(&Real::from_bigint(c, p));
            qn = &qn * &q;
        }
        let v = evaluate_at(SeriesName::P, &q, &Real::pow2(-90, p)).unwrap();
        prop_assert!((&v - &acc).abs().to_f64() < 1e-24);
    }

    #[test]
    fn partition_law_holds_off_the_grid((h, k) in coprime_pair(9), re in 0.3f64..1.5, im in -0.5f64..0.5) {
        let p = 128;
        let z = ComplexHP::new(Real::from_f64(re, p), Real::from_f64(im, p));
        let c = check_law(LawId::PLaw, h, k, &z, &Real::pow2(-34, p)).unwrap();
        prop_assert!(c.passed, "{:?}", c.row());
    }
}

//! Property tests: randomized parameters exercise the invariants that the
//! fixed verification grids pin down at specific points.

use hypercross::counting::{
    count_bruteforce, count_by_support_decomposition, count_recursive, enumerate, CrossKind,
    CrossParams,
};
use hypercross::remainder::{power_term_log, remainder_stable};
use hypercross::spectral::{jackson_check, korobov_norm, project, SparseCoefficients};
use hypercross::volume::{volume, volume_bounds};
use hypercross::widths::{exact_n_eps, singular_values, SettingKind, SmoothnessParams};
use hypercross::MultiIndex;
use num_complex::Complex64;
use proptest::prelude::*;

const CAP: u64 = 3_000_000;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counting_methods_agree(
        s in 1u32..=3,
        a in 0.5f64..3.0,
        t in 0.05f64..60.0,
        symmetric in any::<bool>(),
    ) {
        let kind = if symmetric { CrossKind::Symmetric } else { CrossKind::Corner };
        let p = CrossParams::new(s, t, a, kind).unwrap();
        let brute = count_bruteforce(&p, CAP).unwrap().exact;
        let rec = count_recursive(&p, CAP).unwrap().exact;
        let deco = count_by_support_decomposition(&p, CAP).unwrap().exact;
        prop_assert_eq!(brute, rec);
        prop_assert_eq!(rec, deco);
        prop_assert_eq!(brute, enumerate(&p, CAP).unwrap().len() as u64);
    }

    #[test]
    fn count_monotone_in_threshold(
        s in 1u32..=3,
        a in 0.5f64..2.5,
        t in 0.1f64..40.0,
        bump in 1.0f64..3.0,
    ) {
        let lo = count_recursive(&CrossParams::corner(s, t, a).unwrap(), CAP).unwrap().exact;
        let hi = count_recursive(&CrossParams::corner(s, t * bump, a).unwrap(), CAP).unwrap().exact;
        prop_assert!(lo <= hi);
    }

    #[test]
    fn remainder_bracket_and_identity(s in 1u32..=40, t in 1e-3f64..150.0) {
        let e = remainder_stable(s, t).unwrap();
        prop_assert!(e.log_lower < e.log_value && e.log_value < e.log_upper);
        let next = remainder_stable(s + 1, t).unwrap();
        let p = power_term_log(s, t).exp();
        prop_assert!(((e.value + next.value) - p).abs() <= 1e-10 * p);
    }

    #[test]
    fn volume_sits_inside_its_bounds(
        s in 1u32..=6,
        a in 0.5f64..2.5,
        ratio in 1.05f64..50.0,
    ) {
        let t = ratio * a.powi(s as i32);
        let v = volume(s, t, a).unwrap();
        let b = volume_bounds(s, t, a).unwrap();
        prop_assert!(b.log_lower < v.log_value && v.log_value < b.log_upper);
    }

    #[test]
    fn projection_identities(
        entries in prop::collection::vec(
            ((-8i64..=8, -8i64..=8), (-1.0f64..1.0, -1.0f64..1.0)),
            1..12,
        ),
        t in 1.0f64..20.0,
        a in 0.6f64..2.5,
        r in 0.3f64..2.0,
    ) {
        let mut c = SparseCoefficients::new(2, CrossKind::Symmetric);
        for ((k1, k2), (re, im)) in entries {
            c.insert(MultiIndex(vec![k1, k2]), Complex64::new(re, im)).unwrap();
        }
        prop_assume!(!c.is_empty());
        // jackson ratio at most 1
        let ratio = jackson_check(&c, t, r, a).unwrap();
        prop_assert!(ratio <= 1.0 + 1e-12);
        // projection is idempotent and splits the energy orthogonally
        let head = project(&c, t, a);
        prop_assert_eq!(project(&head, t, a), head.clone());
        let total = c.l2_norm().powi(2);
        let tail = ratio * t.powf(-r) * korobov_norm(&c, r, a);
        prop_assert!((head.l2_norm().powi(2) + tail * tail - total).abs() <= 1e-10 * (1.0 + total));
        // unit weight recovers the plain l2 norm
        prop_assert!((korobov_norm(&c, 0.0, a) - c.l2_norm()).abs() <= 1e-12 * (1.0 + total));
    }

    #[test]
    fn coefficients_json_round_trip(
        entries in prop::collection::vec(
            ((-9i64..=9, -9i64..=9), (-2.0f64..2.0, -2.0f64..2.0)),
            0..10,
        ),
    ) {
        let mut c = SparseCoefficients::new(2, CrossKind::Symmetric);
        for ((k1, k2), (re, im)) in entries {
            c.insert(MultiIndex(vec![k1, k2]), Complex64::new(re, im)).unwrap();
        }
        let json = c.to_json();
        let back = SparseCoefficients::from_json(2, CrossKind::Symmetric, &json).unwrap();
        prop_assert_eq!(c, back);
    }

    #[test]
    fn n_eps_matches_filtered_spectrum(
        a in 1.0f64..2.5,
        r in 0.5f64..2.0,
        eps in 0.15f64..0.95,
    ) {
        let sp = SmoothnessParams::new(2, r, a, SettingKind::PeriodicSymmetric).unwrap();
        let sv = singular_values(&sp, 2000, CAP).unwrap();
        let direct = sv.iter().filter(|&&x| x > eps).count() as u64;
        prop_assume!(direct < 1999); // spectrum long enough to decide
        prop_assert_eq!(exact_n_eps(&sp, eps, CAP).unwrap(), direct);
    }

    #[test]
    fn n_eps_monotone_in_eps(
        a in 0.6f64..2.5,
        r in 0.5f64..2.0,
        eps in 0.05f64..0.9,
        bump in 1.0f64..5.0,
    ) {
        let sp = SmoothnessParams::new(2, r, a, SettingKind::PeriodicSymmetric).unwrap();
        let big = exact_n_eps(&sp, eps, CAP).unwrap();
        let small = exact_n_eps(&sp, (eps * bump).min(1.0), CAP).unwrap();
        prop_assert!(small <= big);
    }
}

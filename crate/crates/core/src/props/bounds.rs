use crate::arith::Rational;
use crate::bounds::{bound_pipeline, curve_discriminant, h_delta_bound, prime_budget, schmidt_discriminant, B_bound};
use crate::divpoly::{division_poly, Curve};
use crate::heights::log_height_rational;
use proptest::prelude::*;

fn curve(bound: i64) -> impl Strategy<Value = Curve> {
    (-bound..=bound, -bound..=bound).prop_filter_map("singular", |(b, c)| Curve::from_ints(b, c).ok())
}

proptest! {
    #[test]
    fn delta_bound(e in curve(1_000_000), m in 3u32..=5) {
        let h = log_height_rational(&curve_discriminant(&e).unwrap());
        prop_assert!(h <= h_delta_bound(&e, m).unwrap());
    }

    #[test]
    fn monotone_in_m(e in curve(10_000), m in 3u32..=20) {
        prop_assert!(B_bound(&e, m).unwrap() < B_bound(&e, m + 2).unwrap());
    }

    #[test]
    fn monotone_in_heights(b in 1i64..10_000, c in 1i64..10_000, m in 3u32..=9) {
        prop_assume!(Curve::from_ints(b, c).is_ok() && Curve::from_ints(b * 7, c).is_ok() && Curve::from_ints(b, c * 7).is_ok());
        let base = B_bound(&Curve::from_ints(b, c).unwrap(), m).unwrap();
        prop_assert!(base < B_bound(&Curve::from_ints(b * 7, c).unwrap(), m).unwrap());
        prop_assert!(base < B_bound(&Curve::from_ints(b, c * 7).unwrap(), m).unwrap());
    }

    #[test]
    fn budget_ratio(e in curve(1_000_000), m in 3u32..=12) {
        let b = B_bound(&e, m).unwrap();
        prop_assert!((prime_budget(&e, m).unwrap() / b - 12577.0).abs() <= 1e-9 * 12577.0);
    }

    #[test]
    fn pipeline_chain(e in curve(1_000_000), m in 3u32..=12) {
        prop_assert!(bound_pipeline(&e, m).unwrap().chain_holds);
    }

    #[test]
    fn odd_closed_form(e in curve(20), m in prop_oneof![Just(3u32), Just(5)]) {
        let psi = division_poly(&e, m).unwrap().poly;
        prop_assert_eq!(schmidt_discriminant(&e, m).unwrap(), psi.discriminant().unwrap());
    }

    #[test]
    fn even_closed_form_counts_two_torsion(e in curve(20), m in prop_oneof![Just(4u32), Just(6)]) {
        let psi = crate::divpoly::torsion_abscissa_poly(&e, m).unwrap();
        prop_assert_eq!(schmidt_discriminant(&e, m).unwrap(), psi.discriminant().unwrap());
    }
}

#[test]
fn rational_curve_budget() {
    let e = Curve::new(Rational::new(3.into(), 2.into()), Rational::new(5.into(), 7.into())).unwrap();
    assert!(bound_pipeline(&e, 5).unwrap().chain_holds);
}

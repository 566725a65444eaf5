use crate::arith::{rat, Rational, UniPoly};
use crate::divpoly::{
    abscissa_map, coeff_height_bound, division_poly, division_poly_degree, psi_log_max_coeff, AbscissaMap, Curve,
};
use num_traits::Zero;
use proptest::prelude::*;

fn curve(bound: i64) -> impl Strategy<Value = Curve> {
    (-bound..=bound, -bound..=bound).prop_filter_map("singular", |(b, c)| Curve::from_ints(b, c).ok())
}

/// `theta_m(theta_n / psi_n) / psi_m(theta_n / psi_n)` as a pair of
/// polynomials, homogenized by `psi_n^(deg)`.
fn compose(outer: &AbscissaMap, inner: &AbscissaMap) -> (UniPoly, UniPoly) {
    let d = outer.theta.degree().unwrap().max(outer.psi_sq.degree().unwrap());
    let hom = |f: &UniPoly| {
        let mut acc = UniPoly::zero();
        for (i, c) in f.coeffs().iter().enumerate() {
            let term = &inner.theta.pow(i as u32) * &inner.psi_sq.pow((d - i) as u32);
            acc = &acc + &term.scale(c);
        }
        acc
    };
    (hom(&outer.theta), hom(&outer.psi_sq))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degrees(e in curve(50), m in 2u32..=30) {
        let psi = division_poly(&e, m).unwrap();
        prop_assert_eq!(psi.poly.degree().unwrap(), division_poly_degree(m));
    }

    #[test]
    fn integral_coefficients(e in curve(1000), m in 2u32..=20) {
        prop_assert!(division_poly(&e, m).unwrap().poly.is_integral());
    }

    #[test]
    fn coefficient_bound(e in curve(1_000_000), m in 3u32..=20) {
        prop_assert!(psi_log_max_coeff(&e, m).unwrap() <= coeff_height_bound(m, &e).unwrap());
    }

    #[test]
    fn composition(e in curve(30), (m, n) in prop_oneof![Just((2u32, 2u32)), Just((2, 3)), Just((3, 2)), Just((3, 3)), Just((2, 5)), Just((3, 4)), Just((4, 3)), Just((2, 6))]) {
        let direct = abscissa_map(&e, m * n).unwrap();
        let (num, den) = compose(&abscissa_map(&e, m).unwrap(), &abscissa_map(&e, n).unwrap());
        prop_assert_eq!(&direct.theta * &den, &num * &direct.psi_sq);
    }

    #[test]
    fn map_matches_doubling(e in curve(100), x in -50i64..50) {
        let x = rat(x);
        let f = e.cubic().eval(&x);
        prop_assume!(!f.is_zero());
        let b = e.b().clone();
        let slope_sq = (rat(3) * &x * &x + &b) * (rat(3) * &x * &x + &b) / (rat(4) * &f);
        let x2: Rational = slope_sq - rat(2) * &x;
        prop_assert_eq!(abscissa_map(&e, 2).unwrap().eval(&x), Some(x2));
    }
}

#[test]
fn rational_torsion_roots_are_poles() {
    // Both curves carry rational points of order 5.
    for (b, c) in [(-432, 8208), (-27, 55350)] {
        let e = Curve::from_ints(b, c).unwrap();
        let psi = division_poly(&e, 5).unwrap().poly;
        let map = abscissa_map(&e, 5).unwrap();
        let roots: Vec<i64> = (-200..=200).filter(|&x| psi.eval(&rat(x)).is_zero()).collect();
        assert!(!roots.is_empty(), "no rational 5-torsion abscissa on ({b}, {c})");
        for x in roots {
            assert!(map.psi_sq.eval(&rat(x)).is_zero());
            assert_eq!(map.eval(&rat(x)), None);
        }
    }
}

#[test]
fn rational_curve_degrees() {
    let e = Curve::new(Rational::new(1.into(), 4.into()), Rational::new((-3).into(), 8.into())).unwrap();
    for m in 2..=10 {
        let psi = division_poly(&e, m).unwrap().poly;
        assert_eq!(psi.degree().unwrap(), division_poly_degree(m));
    }
}

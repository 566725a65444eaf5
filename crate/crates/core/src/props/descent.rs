use crate::arith::{rat, Rational};
use crate::descent::{
    lift_quartic_point, point_add, point_mul, quartic_model, LegendreCurve, TowerPoint,
};
use crate::divpoly::Curve;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn legendre() -> impl Strategy<Value = LegendreCurve> {
    (-40i64..40, -40i64..40).prop_filter_map("degenerate", |(a, b)| LegendreCurve::from_ints(a, b, -a - b).ok())
}

/// Lifts of quartic points on random small Legendre curves, with
/// `|s|, |t| <= 200`.
fn sample_lifts(count: usize) -> Vec<(LegendreCurve, TowerPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut out = Vec::new();
    while out.len() < count {
        let (a, b) = (rng.gen_range(-30i64..30), rng.gen_range(-30i64..30));
        let Ok(curve) = LegendreCurve::from_ints(a, b, -a - b) else { continue };
        let q = quartic_model(&curve).unwrap();
        for (s, t) in q.search_points(200, 1) {
            if s.numer().magnitude() > &200u32.into() || out.len() >= count {
                continue;
            }
            out.push((curve.clone(), lift_quartic_point(&q, &s, &t, &curve).unwrap()));
        }
    }
    out
}

#[test]
fn lifts_are_on_curve_and_four_times_rational() {
    for (curve, d) in sample_lifts(50) {
        let e = curve.short();
        let (x, y) = (d.x().unwrap().clone(), d.y().unwrap().clone());
        assert!(TowerPoint::new(&e, x, y).is_ok());
        let four = point_mul(&e, &d, 4).unwrap();
        assert!(four.is_infinity() || four.as_rational().is_some(), "{d} on {curve:?}");
    }
}

#[test]
fn group_law_axioms() {
    for (curve, d) in sample_lifts(12) {
        let e = curve.short();
        let tower = d.tower().clone();
        let flips = tower.degree() - 1;
        let q = d.conjugate(flips);
        let r = TowerPoint::rational(&e, &tower, curve.alpha().clone(), Rational::from_integer(0.into())).unwrap();
        let o = TowerPoint::infinity(&tower);
        let add = |a: &TowerPoint, b: &TowerPoint| point_add(&e, a, b).unwrap();
        assert_eq!(add(&add(&d, &q), &r), add(&d, &add(&q, &r)));
        assert_eq!(add(&add(&d, &d), &q), add(&d, &add(&d, &q)));
        assert_eq!(add(&d, &o), d);
        assert!(add(&d, &d.neg()).is_infinity());
        assert_eq!(add(&d, &q), add(&q, &d));
    }
}

proptest! {
    #[test]
    fn two_torsion_doubles_to_infinity(curve in legendre()) {
        let e: Curve = curve.short();
        let tower = crate::arith::Tower::rationals();
        for root in curve.two_torsion() {
            let t = TowerPoint::rational(&e, &tower, root, rat(0)).unwrap();
            prop_assert!(point_mul(&e, &t, 2).unwrap().is_infinity());
        }
    }

    #[test]
    fn four_torsion_doubles(curve in legendre()) {
        match crate::descent::four_torsion_generators(&curve) {
            Ok(t) => prop_assert!(t.doubles_ok),
            Err(crate::Error::InvalidTower(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

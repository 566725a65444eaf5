use crate::arith::{MultiQuadElement, Rational, Tower, UniPoly};
use crate::heights::{log_height_multiquad, log_height_poly, log_height_poly_places, log_height_rational};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn rational() -> impl Strategy<Value = Rational> {
    (-100_000i64..100_000, 1i64..100_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn element(tower: Tower) -> impl Strategy<Value = MultiQuadElement> {
    let n = tower.degree();
    prop::collection::vec((-30i64..30, 1i64..6), n).prop_map(move |c| {
        let coords = c.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
        MultiQuadElement::new(&tower, coords).unwrap()
    })
}

fn pair() -> impl Strategy<Value = (MultiQuadElement, MultiQuadElement)> {
    prop_oneof![Just(vec![5i64]), Just(vec![-1, 2]), Just(vec![-3, 2])].prop_flat_map(|r| {
        let t = Tower::new(r).unwrap();
        (element(t.clone()), element(t))
    })
}

proptest! {
    #[test]
    fn rational_product(a in rational(), b in rational()) {
        prop_assert!(log_height_rational(&(&a * &b)) <= log_height_rational(&a) + log_height_rational(&b) + TOL);
    }

    #[test]
    fn rational_sum(xs in prop::collection::vec(rational(), 1..=5)) {
        let sum: Rational = xs.iter().cloned().sum();
        let bound: f64 = xs.iter().map(log_height_rational).sum::<f64>() + (xs.len() as f64).ln();
        prop_assert!(log_height_rational(&sum) <= bound + TOL);
    }

    #[test]
    fn rational_power(a in rational(), r in 1u32..6) {
        let p = num_traits::pow(a.clone(), r as usize);
        prop_assert!((log_height_rational(&p) - r as f64 * log_height_rational(&a)).abs() <= TOL * (1.0 + log_height_rational(&p)));
    }

    #[test]
    fn field_product((a, b) in pair()) {
        let h = log_height_multiquad(&(&a * &b));
        prop_assert!(h <= log_height_multiquad(&a) + log_height_multiquad(&b) + TOL);
    }

    #[test]
    fn field_sum((a, b) in pair()) {
        let h = log_height_multiquad(&(&a + &b));
        prop_assert!(h <= log_height_multiquad(&a) + log_height_multiquad(&b) + 2f64.ln() + TOL);
    }

    #[test]
    fn field_power((a, _) in pair(), r in 1u32..4) {
        let h = log_height_multiquad(&a.pow(r));
        let expected = r as f64 * log_height_multiquad(&a);
        prop_assert!((h - expected).abs() <= TOL * (1.0 + expected));
    }

    #[test]
    fn conjugation_invariant((a, _) in pair()) {
        let h = log_height_multiquad(&a);
        for c in a.conjugates() {
            prop_assert!((log_height_multiquad(&c) - h).abs() <= TOL * (1.0 + h));
        }
    }

    #[test]
    fn gelfand_chain((a, _) in pair()) {
        prop_assume!(!a.is_rational());
        let f = a.min_poly();
        let deg = f.degree().unwrap() as f64;
        prop_assert!(log_height_poly_places(&f).unwrap() <= log_height_poly(&f).unwrap() + deg + TOL);
        let check = crate::heights::check_min_poly_bound(&a).unwrap();
        prop_assert!(check.holds);
    }

    #[test]
    fn poly_height_scale_invariant(c in prop::collection::vec(-50i64..50, 2..6), k in 1i64..30) {
        let f = UniPoly::from_ints(&c);
        prop_assume!(!f.is_zero());
        let g = f.scale(&Rational::new(k.into(), 7.into()));
        prop_assert_eq!(log_height_poly(&f).unwrap(), log_height_poly(&g).unwrap());
    }
}

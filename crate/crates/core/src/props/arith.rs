use crate::arith::{Mat2Mod, MultiQuadElement, Rational, Tower, UniPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..10, 2..=max_deg + 1)
        .prop_filter("nonconstant", |c| c[1..].iter().any(|&a| a != 0))
        .prop_map(|c| UniPoly::from_ints(&c))
}

const TOWERS: [&[i64]; 4] = [&[2], &[-1, 3], &[2, 3, 5], &[-1, 2, 3, 7]];

fn tower_element(tower: Tower) -> impl Strategy<Value = MultiQuadElement> {
    let n = tower.degree();
    prop::collection::vec((-20i64..20, 1i64..5), n).prop_map(move |c| {
        let coords = c.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
        MultiQuadElement::new(&tower, coords).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (MultiQuadElement, MultiQuadElement, MultiQuadElement)> {
    (0..TOWERS.len()).prop_flat_map(|i| {
        let t = Tower::new(TOWERS[i].to_vec()).unwrap();
        (tower_element(t.clone()), tower_element(t.clone()), tower_element(t))
    })
}

proptest! {
    #[test]
    fn rational_sum_is_exact(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let lhs = (Rational::new(a.into(), b.into()) + Rational::new(c.into(), d.into()))
            * Rational::from_integer(BigInt::from(b) * d);
        prop_assert_eq!(lhs, Rational::from_integer(BigInt::from(a) * d + BigInt::from(c) * b));
    }

    #[test]
    fn discriminant_divides_product(f in int_poly(4), g in int_poly(4)) {
        let df = f.discriminant().unwrap();
        let dfg = (&f * &g).discriminant().unwrap();
        prop_assume!(!df.is_zero());
        let q = dfg / df;
        prop_assert!(q.is_integer());
    }

    #[test]
    fn poly_division_roundtrip(f in int_poly(6), g in int_poly(3)) {
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.degree().map_or(true, |d| d < g.degree().unwrap()));
    }

    #[test]
    fn field_mul_commutes_and_associates((a, b, c) in triple()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn field_inverse((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).as_rational().map_or(false, |q| *q == Rational::from_integer(1.into())));
    }

    #[test]
    fn norm_is_multiplicative((a, b, _) in triple()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn matrix_order_kills(n in 2u64..=25, e in prop::array::uniform4(0i64..25)) {
        let m = Mat2Mod::new(n, e).unwrap();
        prop_assume!(m.is_invertible());
        let k = m.order().unwrap();
        prop_assert!(m.pow(k).is_identity());
        for j in 1..k {
            prop_assert!(!m.pow(j).is_identity());
        }
        prop_assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn rational_parse_roundtrip(q in rational()) {
        prop_assert_eq!(crate::arith::parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn gcd_divides(f in int_poly(3), g in int_poly(3), h in int_poly(2)) {
        let a = &f * &h;
        let b = &g * &h;
        let d = UniPoly::gcd(&a, &b);
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert!(h.monic().divides(&d));
    }
}

use crate::arith::Mat2Mod;
use crate::galois::{
    eta, group_closure, h1_and_h1loc, local_condition_check, stabilizer_enumeration, verify_thm22_core,
    Cocycle, MatrixGroup, StabilizerKind, DEFAULT_GROUP_CAP,
};
use proptest::prelude::*;

fn generators() -> impl Strategy<Value = (u64, Vec<Mat2Mod>)> {
    (2u64..=8).prop_flat_map(|n| {
        let m = prop::array::uniform4(0i64..n as i64).prop_filter_map("singular", move |e| {
            Mat2Mod::new(n, e).ok().filter(|m| m.is_invertible())
        });
        (Just(n), prop::collection::vec(m, 0..=2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closure_is_idempotent((n, gens) in generators()) {
        let g = group_closure(&gens, n, DEFAULT_GROUP_CAP).unwrap();
        let again = group_closure(g.elements(), n, DEFAULT_GROUP_CAP).unwrap();
        prop_assert_eq!(&again, &g);
        let gl = crate::galois::general_linear(n).len();
        prop_assert_eq!(gl % g.order(), 0);
        for s in g.elements() {
            prop_assert!(g.contains(&s.inverse().unwrap()));
        }
    }

    #[test]
    fn coboundaries_are_local((n, gens) in generators(), a in 0u64..8, b in 0u64..8) {
        let g = group_closure(&gens, n, DEFAULT_GROUP_CAP).unwrap();
        let z = Cocycle::coboundary(&g, [a % n, b % n]);
        prop_assert!(local_condition_check(&z).is_empty());
    }

    #[test]
    fn cohomology_counts((n, gens) in generators()) {
        let g = group_closure(&gens, n, DEFAULT_GROUP_CAP).unwrap();
        prop_assume!(g.order() <= 64);
        let r = match h1_and_h1loc(&g, 64, 8) {
            Ok(r) => r,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(r.cocycle_count, r.coboundary_count * r.h1_order);
        prop_assert!(r.coboundary_count <= r.local_cocycle_count && r.local_cocycle_count <= r.cocycle_count);
        prop_assert_eq!(r.h1.iter().product::<u64>(), r.h1_order);
        prop_assert_eq!(r.h1loc.iter().product::<u64>(), r.h1loc_order);
        prop_assert_eq!(r.h1_order % r.h1loc_order, 0);
        if g.is_cyclic() {
            prop_assert_eq!(r.h1loc_order, 1);
        }
    }
}

#[test]
fn thm22_small_primes() {
    for p in [5u64, 7, 11, 13] {
        let mut r = 1;
        while p.pow(r) <= 343 {
            assert!(verify_thm22_core(p, r, DEFAULT_GROUP_CAP).unwrap().thm22_core, "p={p} r={r}");
            r += 1;
        }
    }
}

#[test]
fn eta_stabilizers() {
    for p in [5u64, 7] {
        for r in 1..=2 {
            let n = p.pow(r);
            let s = stabilizer_enumeration(p, r, StabilizerKind::PlusMinusP1Det1, DEFAULT_GROUP_CAP).unwrap();
            let cyclic: MatrixGroup = group_closure(&[eta(n)], n, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(s, cyclic);
            assert!(s.is_cyclic());
            assert_eq!(s.order() as u64, 2 * n);
        }
    }
}

use crate::arith::{rat, Rational, UniPoly};
use crate::divpoly::Curve;
use crate::example;
use crate::padic::{qp_root_exists, sweep, Certificate, DivisibilityTest, LocalSolver, Mode};
use crate::primes::primes_up_to;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn valuation(n: &BigInt, p: u64) -> u32 {
    crate::arith::rational::valuation(n, p)
}

fn linear_product() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-40i64..40, 1i64..12), 1..=4).prop_map(|roots| {
        roots.into_iter().fold(UniPoly::one(), |acc, (n, d)| {
            &acc * &UniPoly::from_ints(&[-n, d])
        })
    })
}

/// A curve through `(x, y)` with `b` chosen freely.
fn curve_with_point() -> impl Strategy<Value = (Curve, Rational, Rational)> {
    (-30i64..30, -30i64..30, -30i64..30).prop_filter_map("singular", |(x, y, b)| {
        let c = y * y - x * x * x - b * x;
        Curve::from_ints(b, c).ok().map(|e| (e, rat(x), rat(y)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_roots_everywhere(f in linear_product()) {
        for p in primes_up_to(60) {
            prop_assert!(qp_root_exists(&f, p).unwrap().exists);
        }
    }

    #[test]
    fn hensel_certificates(c in prop::collection::vec(-60i64..60, 3..7)) {
        let f = UniPoly::from_ints(&c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let solver = LocalSolver::new(&f).unwrap();
        let g = solver.poly();
        let dg = g.derivative();
        for p in primes_up_to(40) {
            let r = solver.zp(p).unwrap();
            if r.certificate != Certificate::SimpleRootHensel {
                continue;
            }
            let w = r.witness.unwrap();
            let t = valuation(&dg.eval(&w.residue), p);
            let ga = g.eval(&w.residue);
            prop_assert!(2 * t < w.precision);
            prop_assert!(ga.is_zero() || valuation(&ga, p) >= 2 * t + 1);
        }
    }

    #[test]
    fn full_implies_abscissa((e, x, y) in curve_with_point(), m in 2u32..=3) {
        let test = DivisibilityTest::new(&e, (&x, &y), m).unwrap();
        for p in primes_up_to(50) {
            if test.full(p).unwrap().exists {
                prop_assert!(test.abscissa(p).unwrap().exists);
            }
        }
    }
}

#[test]
fn sweep_is_schedule_independent() {
    let e = example::curve();
    let point = (&rat(10), &rat(10));
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep("paper-sec6", &e, point, 4, 600, Mode::Abscissa, Some(16)).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one, four);
    assert_eq!(one.csv(), four.csv());
}

#[test]
fn density_band() {
    let e = example::curve();
    for limit in [500, 1000, 2000] {
        let r = sweep("paper-sec6", &e, (&rat(10), &rat(10)), 4, limit, Mode::Abscissa, None).unwrap();
        assert!((0.15..=0.40).contains(&r.density_unsolvable), "limit {limit}: {}", r.density_unsolvable);
    }
}

#[test]
fn modes_agree_on_example_below_1000() {
    let e = example::curve();
    let a = sweep("paper-sec6", &e, (&rat(10), &rat(10)), 4, 1000, Mode::Abscissa, None).unwrap();
    let f = sweep("paper-sec6", &e, (&rat(10), &rat(10)), 4, 1000, Mode::Full, None).unwrap();
    assert_eq!(a.solvable, f.solvable);
}

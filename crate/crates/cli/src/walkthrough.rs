//! The worked example end to end: eleven checks, one line each.

use std::time::Instant;

use divlab::arith::{rat, Rational};
use divlab::descent::{
    example_abscissa_report, lift_quartic_point, point_mul, point_sub, quartic_model, LegendreCurve,
};
use divlab::divpoly::{preimage_poly, Curve};
use divlab::example;
use divlab::galois::{
    example_cocycle, example_group, example_group_from_family, h1_and_h1loc, local_condition_check, sigma_params,
};
use divlab::padic::{sweep, Mode};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub index: usize,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl Check {
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Partial => "PARTIAL",
        };
        format!("{tag} [{:>2}] {}: {}", self.index, self.name, self.detail)
    }
}

type Outcome = Result<(Status, String), String>;

fn pass(detail: impl Into<String>) -> Outcome {
    Ok((Status::Pass, detail.into()))
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: divlab::Error) -> String {
    e.to_string()
}

pub struct Options {
    pub curve: Curve,
    pub limit: u64,
}

pub fn run(opts: &Options) -> Vec<Check> {
    let legendre = {
        let (a, b, g) = example::LEGENDRE;
        LegendreCurve::from_ints(a, b, g).expect("distinct roots")
    };
    let point = (rat(example::POINT.0), rat(example::POINT.1));
    let mut checks = Vec::new();
    let mut step = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(r) => r,
            Err(e) => (Status::Fail, e),
        };
        checks.push(Check {
            index: checks.len() + 1,
            name,
            status,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    };

    step("group closure", &mut || {
        let g = example_group();
        require(g.order() == 16 && g.is_elementary_abelian(), || format!("order {}, not (Z/2)^4", g.order()))?;
        require(g == example_group_from_family(), || "generators and family disagree".into())?;
        pass("order 16, elementary abelian, equal to the sigma(x,y,z,w) family")
    });
    step("cocycle failing set", &mut || {
        let g = example_group();
        let z = example_cocycle(&g).map_err(err)?;
        let mut failing: Vec<[u64; 4]> = local_condition_check(&z).iter().filter_map(sigma_params).collect();
        failing.sort_unstable();
        let mut want = example::FAILING_PARAMS.to_vec();
        want.sort_unstable();
        require(failing == want, || format!("failing parameters {failing:?}"))?;
        pass("Z = (2w, 0) fails the local condition exactly at 4 elements")
    });
    step("H^1_loc vanishes", &mut || {
        let r = h1_and_h1loc(&example_group(), 64, 8).map_err(err)?;
        require(r.h1loc_order == 1, || format!("|H^1_loc| = {}", r.h1loc_order))?;
        pass(format!("|H^1| = {}, |H^1_loc| = 1", r.h1_order))
    });
    step("quartic model", &mut || {
        let q = quartic_model(&legendre).map_err(err)?;
        require(q.delta == 7.into() && (q.a4.clone(), q.a2.clone(), q.a0.clone()) == (rat(7), rat(-54), rat(63)), || {
            format!("delta = {}, {q}", q.delta)
        })?;
        pass(format!("delta = 7, {q}"))
    });
    let lift = || {
        let q = quartic_model(&legendre).map_err(err)?;
        lift_quartic_point(&q, &rat(4), &rat(1), &legendre).map_err(err)
    };
    step("lift of (4, 1)", &mut || {
        let d = lift()?;
        require(d.to_string() == "(-1 + 2*sqrt(7), 14 - 10*sqrt(7))", || format!("D = {d}"))?;
        pass(format!("D = {d}"))
    });
    step("[4]D", &mut || {
        let d = lift()?;
        let p = point_mul(&legendre.short(), &d, 4).map_err(err)?;
        require(p.as_rational() == Some(point.clone()), || format!("[4]D = {p}"))?;
        pass("[4]D = (10, 10)")
    });
    step("conjugate difference", &mut || {
        let d = lift()?;
        let diff = point_sub(&legendre.short(), &d.conjugate(1), &d).map_err(err)?;
        require(diff.as_rational() == Some((rat(9), rat(0))), || format!("D^s - D = {diff}"))?;
        pass("D^s - D = (9, 0)")
    });
    step("phi4 coefficients", &mut || {
        let phi = preimage_poly(&opts.curve, example::M, &point.0).map_err(err)?;
        let got: Vec<Rational> = phi.coeffs().iter().rev().cloned().collect();
        let want: Vec<Rational> = example::PHI4_DESC.iter().map(|&c| rat(c)).collect();
        let same = got.iter().zip(&want).filter(|(a, b)| a == b).count();
        require(got == want, || format!("{same}/17 coefficients match"))?;
        pass("17/17 coefficients match")
    });
    step("16 abscissas", &mut || {
        let r = example_abscissa_report(&opts.curve).map_err(err)?;
        let roots = r.checks.iter().filter(|c| c.is_root).count();
        let on = r.checks.iter().filter(|c| c.on_curve == Some(true)).count();
        require(roots == 16 && on == 16, || format!("{roots}/16 roots, {on}/16 ordinates on the curve"))?;
        pass("16/16 roots of phi4 and 16/16 ordinates on the curve")
    });
    let swept = sweep(
        "paper-sec6",
        &opts.curve,
        (&point.0, &point.1),
        example::M,
        opts.limit,
        Mode::Abscissa,
        Some(example::GROUP_ORDER),
    );
    let partial = opts.limit < 1000;
    let within = |ps: &[u64]| -> Vec<u64> { ps.iter().copied().filter(|&p| p <= opts.limit).collect() };
    step("prime sweep", &mut || {
        let r = swept.clone().map_err(err)?;
        let (s, u) = (within(&example::SOLVABLE_PRIMES), within(&example::UNSOLVABLE_PRIMES));
        require(r.solvable == s && r.unsolvable == u, || {
            format!("solvable={} unsolvable={} differ from the listed primes", r.solvable.len(), r.unsolvable.len())
        })?;
        let detail = format!("solvable={} unsolvable={} up to {}", r.solvable.len(), r.unsolvable.len(), opts.limit);
        Ok((if partial { Status::Partial } else { Status::Pass }, detail))
    });
    step("density", &mut || {
        let r = swept.clone().map_err(err)?;
        let u = within(&example::UNSOLVABLE_PRIMES).len();
        let total = u + within(&example::SOLVABLE_PRIMES).len();
        let expected = u as f64 / total as f64;
        require((r.density_unsolvable - expected).abs() <= 1e-12, || format!("density {}", r.density_unsolvable))?;
        require(r.density_unsolvable > 1.0 / example::GROUP_ORDER as f64, || "density below 1/16".into())?;
        let detail = format!("{} = {:.4} > 1/16", r.density_fraction, r.density_unsolvable);
        Ok((if partial { Status::Partial } else { Status::Pass }, detail))
    });
    checks
}

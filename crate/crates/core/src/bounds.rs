//! Discriminant bounds for the m-division field and the resulting prime
//! budget.
//!
//! With `n = m^2 - 1, k = m^2 - 3` for odd `m` and `n = m^2 - 4, k = m^2 - 6`
//! for even `m`, the headline bound is
//! `B(m, b, c) = 5 n^3 k (log m + h(b) + h(c))` and the prime budget is
//! `12577 * B`, a cap on `log v` for the places that need testing.

use std::f64::consts::LN_2;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rational::Rational;
use crate::divpoly::{abscissa_height_bound, Curve};
use crate::error::{Error, Result};
use crate::heights::log_height_rational;

/// Exponent in the effective Chebotarev bound used for the budget.
pub const BUDGET_EXPONENT: f64 = 12577.0;

/// Largest `log v` for which the budget primes are enumerated by default.
pub const DEFAULT_ENUMERATION_CAP: f64 = 30.0;

pub fn curve_discriminant(curve: &Curve) -> Result<Rational> {
    let d = curve.discriminant();
    if d.is_zero() {
        return Err(Error::SingularCurve);
    }
    Ok(d)
}

fn require_m3(m: u32) -> Result<()> {
    if m < 3 {
        return Err(Error::invalid("m >= 3 required"));
    }
    Ok(())
}

fn parity_terms(m: u32) -> (f64, f64) {
    let m2 = (m * m) as f64;
    if m % 2 == 1 {
        (m2 - 1.0, m2 - 3.0)
    } else {
        (m2 - 4.0, m2 - 6.0)
    }
}

fn hb_hc(curve: &Curve) -> (f64, f64) {
    (log_height_rational(curve.b()), log_height_rational(curve.c()))
}

/// `10 log m + 3 h(b) + 2 h(c)`, an upper bound for `h(Delta)`.
pub fn h_delta_bound(curve: &Curve, m: u32) -> Result<f64> {
    require_m3(m)?;
    let (hb, hc) = hb_hc(curve);
    Ok(10.0 * (m as f64).ln() + 3.0 * hb + 2.0 * hc)
}

/// The closed-form discriminant of `Psi_m`:
/// odd `m`: `(-1)^((m-1)/2) m^((m^2-3)/2) Delta^((m^2-1)(m^2-3)/24)`;
/// even `m`: `(-1)^((m-2)/2) m^(m^2/2) 2^(2-m^2) Delta^(m^2(m^2+2)/24)`.
pub fn schmidt_discriminant(curve: &Curve, m: u32) -> Result<Rational> {
    require_m3(m)?;
    let delta = curve_discriminant(curve)?;
    let mm = BigInt::from(m);
    let m2 = (m * m) as usize;
    let value = if m % 2 == 1 {
        let sign = if (m - 1) / 2 % 2 == 1 { -1 } else { 1 };
        Rational::from_integer(num_traits::pow(mm, (m2 - 3) / 2) * sign)
            * num_traits::pow(delta, (m2 - 1) * (m2 - 3) / 24)
    } else {
        let sign = if (m - 2) / 2 % 2 == 1 { -1 } else { 1 };
        let two_pow = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), m2 - 2));
        Rational::from_integer(num_traits::pow(mm, m2 / 2) * sign)
            * two_pow
            * num_traits::pow(delta, m2 * (m2 + 2) / 24)
    };
    Ok(value)
}

/// `B(m, b, c)`.
#[allow(non_snake_case)]
pub fn B_bound(curve: &Curve, m: u32) -> Result<f64> {
    require_m3(m)?;
    let (n, k) = parity_terms(m);
    let (hb, hc) = hb_hc(curve);
    Ok(5.0 * n.powi(3) * k * ((m as f64).ln() + hb + hc))
}

pub fn prime_budget(curve: &Curve, m: u32) -> Result<f64> {
    Ok(BUDGET_EXPONENT * B_bound(curve, m)?)
}

/// The shorter form `n^3 (m - t) log(m^5 |bc|)` with `t = 3` (odd) or
/// `t = 6` (even), evaluated literally. It is not always an upper bound
/// (it vanishes at `m = 3` and is negative at `m = 4`), so it is reported
/// for information only.
pub fn elegant_bound(curve: &Curve, m: u32) -> Result<f64> {
    require_m3(m)?;
    let (b, c) = (curve.b(), curve.c());
    if b.is_zero() || c.is_zero() {
        return Err(Error::ElegantUndefined("b and c must be nonzero"));
    }
    if !curve.is_integral() {
        return Err(Error::ElegantUndefined("b and c must be integers"));
    }
    let (n, _) = parity_terms(m);
    let t = if m % 2 == 1 { 3.0 } else { 6.0 };
    let log_bc = crate::arith::rational::log_abs_bigint(&(b.numer() * c.numer()).abs());
    Ok(n.powi(3) * (m as f64 - t) * (5.0 * (m as f64).ln() + log_bc))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Intermediates {
    /// Bound on `h(D_{F1F2/K})` for the compositum of the two abscissa fields.
    pub disc_f1f2: f64,
    /// Bound on the height of the norm of the relative discriminant of the
    /// ordinate extension, via the abscissa height bound.
    pub norm_bound: f64,
    /// The simplified upper bound `9/2 n^3 k (log m + h(b) + h(c))` for it.
    pub norm_bound_simplified: f64,
    /// `4 * disc_f1f2 + norm_bound_simplified`, the assembled discriminant bound.
    pub assembled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub m: u32,
    pub h_b: f64,
    pub h_c: f64,
    /// Actual `h(Delta)`.
    pub h_delta: f64,
    pub h_delta_bound: f64,
    pub intermediate: Intermediates,
    #[serde(rename = "B")]
    pub b_bound: f64,
    pub prime_budget: f64,
    pub elegant_form: Option<f64>,
    pub density_threshold: Option<f64>,
    /// `h(Delta) <= bound`, `norm_bound <= simplified`, `assembled <= B`.
    pub chain_holds: bool,
}

pub fn bound_pipeline(curve: &Curve, m: u32) -> Result<BoundReport> {
    require_m3(m)?;
    let (n, k) = parity_terms(m);
    let (hb, hc) = hb_hc(curve);
    let lm = (m as f64).ln();
    let m2 = (m * m) as f64;
    let delta = curve_discriminant(curve)?;
    let h_delta = log_height_rational(&delta);
    let hd = h_delta_bound(curve, m)?;

    let disc_f1f2 = if m % 2 == 1 {
        n * ((m2 - 3.0) / 2.0 * lm + n * k / 24.0 * hd)
    } else {
        n * (m2 / 2.0 * lm + (m2 - 2.0) * LN_2 + m2 * (m2 + 2.0) / 24.0 * hd)
    };
    let hx = abscissa_height_bound(m, curve)?;
    let norm_bound =
        n * k / 4.0 * (8.0 * LN_2 + 16.0 * hx + 4.0 * hb + 4.0 * hc + 4.0 * 3f64.ln());
    let norm_bound_simplified = 4.5 * n.powi(3) * k * (lm + hb + hc);
    let assembled = 4.0 * disc_f1f2 + norm_bound_simplified;
    let b = B_bound(curve, m)?;

    let chain_holds = h_delta <= hd && norm_bound <= norm_bound_simplified && assembled <= b;
    Ok(BoundReport {
        m,
        h_b: hb,
        h_c: hc,
        h_delta,
        h_delta_bound: hd,
        intermediate: Intermediates { disc_f1f2, norm_bound, norm_bound_simplified, assembled },
        b_bound: b,
        prime_budget: BUDGET_EXPONENT * b,
        elegant_form: elegant_bound(curve, m).ok(),
        density_threshold: None,
        chain_holds,
    })
}

/// Primes `v` with `log v <= log_budget`, refused when the budget exceeds
/// `cap`.
pub fn budget_primes(log_budget: f64, cap: f64) -> Result<Vec<u64>> {
    if !(log_budget <= cap) {
        return Err(Error::CapExceeded { what: "log prime budget", cap: cap as u64 });
    }
    // The sieve is held in memory; beyond 10^9 only the budget is reported.
    const SIEVE_LIMIT: u64 = 1_000_000_000;
    if log_budget.exp() > SIEVE_LIMIT as f64 {
        return Err(Error::CapExceeded { what: "prime enumeration bound", cap: SIEVE_LIMIT });
    }
    Ok(crate::primes::primes_up_to(log_budget.exp().floor() as u64))
}

/// Rounds `x` up to `digits` significant digits, so a reported upper bound
/// never decreases.
pub fn round_up_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", digits - 1, x);
    let v: f64 = s.parse().expect("formatted float parses");
    if v >= x {
        return v;
    }
    let exp = x.abs().log10().floor() as i32;
    let step = 10f64.powi(exp + 1 - digits as i32);
    let bumped = format!("{:.*e}", digits - 1, v + step);
    bumped.parse().expect("formatted float parses")
}

/// Decimal rendering with 12 significant digits, used for every float in
/// reports.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::UniPoly;
    use crate::arith::rational::rat;
    use crate::divpoly::{division_poly, torsion_abscissa_poly};

    fn ex() -> Curve {
        Curve::from_ints(-171, 810).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn discriminants() {
        assert_eq!(curve_discriminant(&ex()).unwrap(), rat(36578304));
        assert_eq!(curve_discriminant(&Curve::from_ints(-1, 0).unwrap()).unwrap(), rat(64));
        let d = curve_discriminant(&ex()).unwrap();
        assert_eq!(schmidt_discriminant(&ex(), 3).unwrap(), rat(-27) * &d * &d);
        assert_eq!(schmidt_discriminant(&ex(), 4).unwrap(), rat(-4) * num_traits::pow(d, 12));
        let psi3 = division_poly(&ex(), 3).unwrap().poly;
        assert_eq!(psi3.discriminant().unwrap(), schmidt_discriminant(&ex(), 3).unwrap());
    }

    #[test]
    fn even_formula_counts_two_torsion() {
        let e = Curve::from_ints(1, 1).unwrap();
        let full = torsion_abscissa_poly(&e, 4).unwrap();
        assert_eq!(full.discriminant().unwrap(), schmidt_discriminant(&e, 4).unwrap());
        let psi = division_poly(&e, 4).unwrap().poly;
        assert_ne!(psi.discriminant().unwrap(), schmidt_discriminant(&e, 4).unwrap());
        assert_eq!(UniPoly::one().degree(), Some(0));
    }

    #[test]
    fn bound_values() {
        let one = Curve::from_ints(1, 1).unwrap();
        assert!(rel(B_bound(&one, 3).unwrap(), 16874.6) < 1e-5);
        let expected = 86400.0 * (4f64.ln() + 171f64.ln() + 810f64.ln());
        assert!(rel(B_bound(&ex(), 4).unwrap(), expected) < 1e-12);
        assert!(rel(prime_budget(&ex(), 4).unwrap(), 12577.0 * expected) < 1e-12);
        assert!(rel(h_delta_bound(&ex(), 4).unwrap(), 42.68) < 1e-3);
        assert!(B_bound(&one, 2).is_err());
    }

    #[test]
    fn elegant() {
        let one = Curve::from_ints(1, 1).unwrap();
        assert_eq!(elegant_bound(&one, 3).unwrap(), 0.0);
        assert!(rel(elegant_bound(&one, 5).unwrap(), 2.225e5) < 1e-3);
        assert!(elegant_bound(&ex(), 4).unwrap() < 0.0);
        let zero_b = Curve::from_ints(0, 1).unwrap();
        assert!(matches!(elegant_bound(&zero_b, 3), Err(Error::ElegantUndefined(_))));
    }

    #[test]
    fn pipeline_chain() {
        for (b, c, m) in [(1, 1, 3), (1, 1, 5), (-171, 810, 4), (0, 1, 6)] {
            let r = bound_pipeline(&Curve::from_ints(b, c).unwrap(), m).unwrap();
            assert!(r.chain_holds, "{b} {c} {m}: {r:?}");
        }
        let r = bound_pipeline(&Curve::from_ints(1, 1).unwrap(), 3).unwrap();
        assert!(rel(r.intermediate.norm_bound_simplified, 15187.0) < 1e-4);
    }

    #[test]
    fn budget_enumeration_cap() {
        assert_eq!(budget_primes(3.0, DEFAULT_ENUMERATION_CAP).unwrap(), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(budget_primes(prime_budget(&ex(), 4).unwrap(), DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.0625), "0.0625");
        assert_eq!(format_float(45.0 / 168.0), "0.267857142857");
        assert_eq!(format_float(1142630.5), "1142630.5");
    }

    #[test]
    fn rounding_up() {
        let x = 1.0 / 3.0;
        let r = round_up_sig(x, 12);
        assert!(r >= x && r - x < 1e-12);
        assert_eq!(round_up_sig(0.0625, 12), 0.0625);
    }
}

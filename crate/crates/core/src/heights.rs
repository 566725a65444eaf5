//! Logarithmic Weil heights.
//!
//! All heights are natural-log valued with `log+ 0 = 0`. For a reduced
//! rational `a/b` the height is `log max(|a|, b)`; for an algebraic number it
//! is computed from its minimal polynomial `a_d prod (X - alpha_i)` as
//! `(log|a_d| + sum log+ |alpha_i|) / d` (log Mahler measure over degree).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::multiquad::MultiQuadElement;
use crate::arith::poly::UniPoly;
use crate::arith::rational::{log_abs_bigint, Rational};
use crate::error::{Error, Result};

/// A height value in natural-log units.
pub type LogHeight = f64;

pub fn log_height_rational(q: &Rational) -> LogHeight {
    if q.is_zero() {
        return 0.0;
    }
    let num = q.numer().abs();
    let m = if &num > q.denom() { num } else { q.denom().clone() };
    log_abs_bigint(&m)
}

/// `log max |a_i|` of the primitive integer normalization of `f`.
pub fn log_height_poly(f: &UniPoly) -> Result<LogHeight> {
    let (_, g) = f.content_primitive()?;
    Ok(log_abs_bigint(&g.max_abs_coeff()))
}

/// Height of a polynomial with rational coefficients summed over all places
/// of `Q`: `log+ max |a_i| + log lcm(denominators)`.
pub fn log_height_poly_places(f: &UniPoly) -> Result<LogHeight> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut lcm = BigInt::one();
    let mut max = Rational::zero();
    for a in f.coeffs() {
        lcm = lcm.lcm(a.denom());
        if a.abs() > max {
            max = a.abs();
        }
    }
    let arch = if max > Rational::one() {
        log_abs_bigint(max.numer()) - log_abs_bigint(max.denom())
    } else {
        0.0
    };
    Ok(arch + log_abs_bigint(&lcm))
}

pub fn log_height_multiquad(x: &MultiQuadElement) -> LogHeight {
    if let Some(q) = x.as_rational() {
        return log_height_rational(q);
    }
    let conj = x.distinct_conjugates();
    let f = x.min_poly();
    let (_, g) = f
        .content_primitive()
        .expect("minimal polynomial is nonzero");
    let lc = g.leading().expect("nonzero").abs();
    let sum: f64 = conj
        .iter()
        .map(|c| c.to_complex().norm().ln().max(0.0))
        .sum();
    (log_abs_bigint(&lc) + sum) / conj.len() as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinPolyBound {
    pub h_alpha: LogHeight,
    pub h_falpha: LogHeight,
    pub holds: bool,
}

/// Compares `h(alpha)` against `h(f_alpha) + log 2` for the monic minimal
/// polynomial `f_alpha`.
pub fn check_min_poly_bound(x: &MultiQuadElement) -> Result<MinPolyBound> {
    if x.is_rational() {
        return Err(Error::invalid("element has degree 1"));
    }
    let h_alpha = log_height_multiquad(x);
    let h_falpha = log_height_poly_places(&x.min_poly())?;
    Ok(MinPolyBound { h_alpha, h_falpha, holds: h_alpha <= h_falpha + 2f64.ln() })
}

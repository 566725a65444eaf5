//! Rational numbers and small integer helpers.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps the
//! numerator and denominator coprime with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-171"`, `"3/2"` or a terminating decimal such as `"-0.125"`
/// exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int_digits}{frac}").parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        let q = Rational::new(digits, den);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Natural log of `|n|`, accurate for integers far beyond the `f64` range.
pub fn log_abs_bigint(n: &BigInt) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.abs().to_f64() {
            if f.is_finite() {
                return f.ln();
            }
        }
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().expect("64-bit prefix");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(q: &Rational) -> f64 {
    if let Some(f) = q.to_f64() {
        if f.is_finite() {
            return f;
        }
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * (log_abs_bigint(q.numer()) - log_abs_bigint(q.denom())).exp()
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Writes a nonzero integer as `sign * square^2 * core` with `core` a
/// positive squarefree integer. Trial division; meant for curve-sized inputs.
pub fn squarefree_decompose(n: &BigInt) -> (i8, BigInt, BigInt) {
    assert!(!n.is_zero(), "squarefree part of zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            square *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                core *= &p;
            }
        }
        p += 1u32;
    }
    core *= rest;
    (sign, square, core)
}

/// Distinct prime factors of `|n|` in increasing order (trial division).
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            out.push(p.clone());
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
        }
        p += 1u32;
    }
    if rest > BigInt::one() {
        out.push(rest);
    }
    out
}

/// Signed squarefree part: the unique squarefree `d` with `q = d * w^2`,
/// `w` rational.
pub fn squarefree_part(q: &Rational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::invalid("squarefree part of zero"));
    }
    let n = q.numer() * q.denom();
    let (sign, _, core) = squarefree_decompose(&n);
    Ok(if sign < 0 { -core } else { core })
}

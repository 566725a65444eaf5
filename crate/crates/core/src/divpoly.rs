//! Curves `y^2 = x^3 + bx + c`, division polynomials and the
//! multiplication-by-m abscissa map.
//!
//! `Psi_m` is `psi_m` for odd `m` and `psi_m / (2y)` for even `m`, with
//! `y^2` replaced by `x^3 + bx + c`. So `Psi_2 = 1`, `Psi_3` leads with 3 and
//! `Psi_4` leads with 2. Degrees are `(m^2-1)/2` and `(m^2-4)/2`.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::poly::{IntPoly, UniPoly};
use crate::arith::rational::Rational;
use crate::error::{Error, Result};
use crate::heights::log_height_rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    b: Rational,
    c: Rational,
}

impl Curve {
    pub fn new(b: Rational, c: Rational) -> Result<Curve> {
        let curve = Curve { b, c };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_ints(b: i64, c: i64) -> Result<Curve> {
        Curve::new(Rational::from_integer(b.into()), Rational::from_integer(c.into()))
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `-16 (4b^3 + 27c^2)`.
    pub fn discriminant(&self) -> Rational {
        let four_b3 = Rational::from_integer(4.into()) * &self.b * &self.b * &self.b;
        let c2 = Rational::from_integer(27.into()) * &self.c * &self.c;
        Rational::from_integer((-16).into()) * (four_b3 + c2)
    }

    pub fn is_integral(&self) -> bool {
        self.b.denom().is_one() && self.c.denom().is_one()
    }

    /// `x^3 + bx + c`.
    pub fn cubic(&self) -> UniPoly {
        UniPoly::new(vec![self.c.clone(), self.b.clone(), Rational::zero(), Rational::one()])
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.cubic().eval(x)
    }

    /// The integral model `(u^4 b, u^6 c)` with `u` the least common
    /// denominator of `b` and `c`, together with `u`.
    pub fn integral_model(&self) -> (BigInt, BigInt, BigInt) {
        let u = self.b.denom().lcm(self.c.denom());
        let u2 = &u * &u;
        let u4 = &u2 * &u2;
        let bb = (&self.b * Rational::from_integer(u4.clone())).to_integer();
        let cc = (&self.c * Rational::from_integer(&u4 * &u2)).to_integer();
        (bb, cc, u)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.cubic())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPoly {
    pub m: u32,
    pub poly: UniPoly,
}

type MemoKey = (BigInt, BigInt, u32);

fn memo() -> &'static RwLock<HashMap<MemoKey, IntPoly>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, IntPoly>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Fills `table` with `g_n` for every index needed to reach `n` on the
/// integral curve `(b, c)`.
fn g_int(n: u32, b: &BigInt, c: &BigInt, table: &mut HashMap<u32, IntPoly>) -> IntPoly {
    if let Some(g) = table.get(&n) {
        return g.clone();
    }
    if let Some(g) = memo().read().expect("memo poisoned").get(&(b.clone(), c.clone(), n)) {
        table.insert(n, g.clone());
        return g.clone();
    }
    let g = match n {
        0 => IntPoly::zero(),
        1 | 2 => IntPoly::from_i64(&[1]),
        3 => IntPoly::new(vec![-(b * b), c * 12u32, b * 6u32, BigInt::zero(), BigInt::from(3)]),
        4 => IntPoly::new(vec![
            -(c * c * 8u32) - b * b * b,
            -(b * c * 4u32),
            -(b * b * 5u32),
            c * 20u32,
            b * 5u32,
            BigInt::zero(),
            BigInt::one(),
        ])
        .scale(&BigInt::from(2)),
        _ => {
            let k = n / 2;
            if n % 2 == 1 {
                let f4 = IntPoly::new(vec![c * 4u32, b * 4u32, BigInt::zero(), BigInt::from(4)]);
                let f4sq = &f4 * &f4;
                let gk = g_int(k, b, c, table);
                let a = &g_int(k + 2, b, c, table) * &(&(&gk * &gk) * &gk);
                let gk1 = g_int(k + 1, b, c, table);
                let d = &g_int(k - 1, b, c, table) * &(&(&gk1 * &gk1) * &gk1);
                if k % 2 == 0 {
                    &(&f4sq * &a) - &d
                } else {
                    &a - &(&f4sq * &d)
                }
            } else {
                let gkm1 = g_int(k - 1, b, c, table);
                let gkp1 = g_int(k + 1, b, c, table);
                let left = &g_int(k + 2, b, c, table) * &(&gkm1 * &gkm1);
                let right = &g_int(k - 2, b, c, table) * &(&gkp1 * &gkp1);
                &g_int(k, b, c, table) * &(&left - &right)
            }
        }
    };
    if n > 4 {
        memo()
            .write()
            .expect("memo poisoned")
            .entry((b.clone(), c.clone(), n))
            .or_insert_with(|| g.clone());
    }
    table.insert(n, g.clone());
    g
}

/// `g_n` over `Q` for the given curve, undoing the integral-model scaling:
/// the coefficient of `x^i` picks up `u^(2i - w)`.
fn g_poly(curve: &Curve, n: u32) -> UniPoly {
    let (bb, cc, u) = curve.integral_model();
    let g = g_int(n, &bb, &cc, &mut HashMap::new());
    if u.is_one() {
        return g.to_rational();
    }
    let w: i64 = if n % 2 == 1 { (n * n) as i64 - 1 } else { (n * n) as i64 - 4 };
    let u = Rational::from_integer(u);
    UniPoly::new(
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let e = 2 * i as i64 - w;
                let scale = if e >= 0 {
                    num_traits::pow(u.clone(), e as usize)
                } else {
                    num_traits::pow(u.recip(), (-e) as usize)
                };
                Rational::from_integer(a.clone()) * scale
            })
            .collect(),
    )
}

pub fn division_poly(curve: &Curve, m: u32) -> Result<DivisionPoly> {
    if m < 2 {
        return Err(Error::invalid("m >= 2 required"));
    }
    Ok(DivisionPoly { m, poly: g_poly(curve, m) })
}

pub fn division_poly_degree(m: u32) -> usize {
    if m % 2 == 1 {
        ((m * m - 1) / 2) as usize
    } else {
        ((m * m - 4) / 2) as usize
    }
}

/// Polynomial whose roots are the abscissas of all nonzero m-torsion points:
/// `Psi_m` for odd `m` and `2 (x^3 + bx + c) Psi_m` for even `m`.
pub fn torsion_abscissa_poly(curve: &Curve, m: u32) -> Result<UniPoly> {
    let psi = division_poly(curve, m)?.poly;
    if m % 2 == 1 {
        Ok(psi)
    } else {
        Ok(&curve.cubic().scale(&Rational::from_integer(2.into())) * &psi)
    }
}

/// `x([m]Q) = theta(x) / psi_sq(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbscissaMap {
    pub m: u32,
    pub theta: UniPoly,
    pub psi_sq: UniPoly,
}

impl AbscissaMap {
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let den = self.psi_sq.eval(x);
        (!den.is_zero()).then(|| self.theta.eval(x) / den)
    }
}

pub fn abscissa_map(curve: &Curve, m: u32) -> Result<AbscissaMap> {
    if m == 0 {
        return Err(Error::invalid("m >= 1 required"));
    }
    if m == 1 {
        return Ok(AbscissaMap { m, theta: UniPoly::x(), psi_sq: UniPoly::one() });
    }
    let f4 = curve.cubic().scale(&Rational::from_integer(4.into()));
    let gm = g_poly(curve, m);
    let neighbours = &g_poly(curve, m - 1) * &g_poly(curve, m + 1);
    let (psi_sq, prod) = if m % 2 == 1 {
        (&gm * &gm, &f4 * &neighbours)
    } else {
        (&f4 * &(&gm * &gm), neighbours)
    };
    let theta = &(&UniPoly::x() * &psi_sq) - &prod;
    Ok(AbscissaMap { m, theta, psi_sq })
}

/// Integer-primitive polynomial of degree `m^2` whose roots are the
/// abscissas of the points `D` with `x([m]D) = x_p`.
pub fn preimage_poly(curve: &Curve, m: u32, x_p: &Rational) -> Result<UniPoly> {
    let map = abscissa_map(curve, m)?;
    let num = UniPoly::constant(Rational::from_integer(x_p.numer().clone()));
    let den = UniPoly::constant(Rational::from_integer(x_p.denom().clone()));
    (&(&den * &map.theta) - &(&num * &map.psi_sq)).primitive()
}

/// Log of the asymptotic coefficient bound for `Psi_m` as a polynomial in
/// `x, b, c`: `((3m^2+1)/2) log 2 + m^2/2 - 3 log m - log pi`.
pub fn mckee_bound(m: u32) -> f64 {
    let m2 = (m * m) as f64;
    (3.0 * m2 + 1.0) / 2.0 * LN_2 + m2 / 2.0 - 3.0 * (m as f64).ln() - PI.ln()
}

/// `ln Gamma(k/2)` for a positive integer `k`, exact summation.
fn ln_gamma_half(k: u64) -> f64 {
    let ln_fact = |n: u64| (2..=n).map(|i| (i as f64).ln()).sum::<f64>();
    if k % 2 == 0 {
        ln_fact(k / 2 - 1)
    } else {
        // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
        let n = (k - 1) / 2;
        ln_fact(2 * n) + 0.5 * PI.ln() - n as f64 * 4f64.ln() - ln_fact(n)
    }
}

/// Log of the factorial form
/// `m^(m^2) (m^2 - 1/2)! / (((m^2-1)/2)!^2 (m^2/2 + 1)!)`.
pub fn mckee_bound_factorial(m: u32) -> f64 {
    let m2 = (m * m) as u64;
    // x! = Gamma(x + 1); arguments written as halves.
    m2 as f64 * (m as f64).ln() + ln_gamma_half(2 * m2 + 1)
        - 2.0 * ln_gamma_half(m2 + 1)
        - ln_gamma_half(m2 + 4)
}

/// `deg Psi_m * (mckee_bound(m) + h(b) + h(c))`, with heights taken on the
/// integral model of the curve.
pub fn coeff_height_bound(m: u32, curve: &Curve) -> Result<f64> {
    if m < 3 {
        return Err(Error::invalid("m >= 3 required"));
    }
    let (b, c, _) = curve.integral_model();
    let hb = log_height_rational(&Rational::from_integer(b));
    let hc = log_height_rational(&Rational::from_integer(c));
    Ok(division_poly_degree(m) as f64 * (mckee_bound(m) + hb + hc))
}

/// Height bound for abscissas of m-torsion points:
/// `n^2 log m + (n/2)(h(b) + h(c)) + log 2`, `n = m^2 - 1` (odd) or
/// `m^2 - 4` (even).
pub fn abscissa_height_bound(m: u32, curve: &Curve) -> Result<f64> {
    if m < 3 {
        return Err(Error::invalid("m >= 3 required"));
    }
    let n = if m % 2 == 1 { (m * m - 1) as f64 } else { (m * m - 4) as f64 };
    let h = log_height_rational(curve.b()) + log_height_rational(curve.c());
    Ok(n * n * (m as f64).ln() + n / 2.0 * h + LN_2)
}

/// `log max |a_i|` over the integer coefficients of `Psi_m` on the integral
/// model.
pub fn psi_log_max_coeff(curve: &Curve, m: u32) -> Result<f64> {
    let (b, c, _) = curve.integral_model();
    let model = Curve::new(Rational::from_integer(b), Rational::from_integer(c))?;
    let psi = division_poly(&model, m)?.poly;
    let max = psi.coeffs().iter().map(|a| a.abs()).max().expect("nonzero");
    Ok(crate::arith::rational::log_abs_bigint(max.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    fn ex() -> Curve {
        Curve::from_ints(-171, 810).unwrap()
    }

    #[test]
    fn psi3_closed_form() {
        let e = Curve::from_ints(1, 1).unwrap();
        assert_eq!(division_poly(&e, 3).unwrap().poly, UniPoly::from_ints(&[-1, 12, 6, 0, 3]));
        assert_eq!(division_poly(&e, 2).unwrap().poly, UniPoly::one());
        assert!(division_poly(&e, 1).is_err());
        assert_eq!(Curve::from_ints(0, 0), Err(Error::SingularCurve));
    }

    #[test]
    fn degrees() {
        let e = ex();
        for m in 2..=12 {
            assert_eq!(division_poly(&e, m).unwrap().poly.degree(), Some(division_poly_degree(m)));
        }
    }

    #[test]
    fn duplication_value() {
        let map = abscissa_map(&ex(), 2).unwrap();
        assert_eq!(map.eval(&rat(10)).unwrap(), ratio(8641, 400));
        let id = abscissa_map(&ex(), 1).unwrap();
        assert_eq!((id.theta, id.psi_sq), (UniPoly::x(), UniPoly::one()));
        let m4 = abscissa_map(&ex(), 4).unwrap();
        assert_eq!(m4.theta.degree(), Some(16));
        assert_eq!(m4.theta.leading(), Some(&rat(1)));
    }

    #[test]
    fn preimage_small() {
        assert_eq!(preimage_poly(&ex(), 1, &rat(10)).unwrap(), UniPoly::from_ints(&[-10, 1]));
        let phi = preimage_poly(&ex(), 4, &rat(10)).unwrap();
        assert!(UniPoly::from_ints(&[-27, 2, 1]).divides(&phi));
    }

    #[test]
    fn rational_curve_scaling() {
        // y^2 = x^3 + x/16 + 1/64 is the integral curve (1, 1) with x -> x/4.
        let e = Curve::new(ratio(1, 16), ratio(1, 64)).unwrap();
        let psi = division_poly(&e, 5).unwrap().poly;
        let model = division_poly(&Curve::from_ints(1, 1).unwrap(), 5).unwrap().poly;
        let scaled = model.compose(&UniPoly::new(vec![rat(0), rat(4)]));
        let w = num_traits::pow(rat(4), 12);
        assert_eq!(psi, scaled.scale(&w.recip()));
    }

    #[test]
    fn mckee_values() {
        assert!((mckee_bound(3) - 9.7636).abs() < 1e-3);
        assert!((mckee_bound(4) - 19.672).abs() < 1e-2);
        assert!(mckee_bound_factorial(3) < mckee_bound(3));
        let e = Curve::from_ints(1, 1).unwrap();
        assert!((coeff_height_bound(3, &e).unwrap() - 39.054).abs() < 1e-2);
        assert!((abscissa_height_bound(3, &e).unwrap() - (64.0 * 3f64.ln() + LN_2)).abs() < 1e-9);
        assert!((abscissa_height_bound(4, &ex()).unwrap() - 271.4).abs() < 0.1);
    }
}

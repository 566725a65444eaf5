//! Legendre-form curves, the auxiliary quartic whose rational points give
//! 4-divisors over `Q(sqrt(delta))`, and exact point arithmetic over a
//! multiquadratic tower.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::multiquad::{MultiQuadElement, Tower};
use crate::arith::rational::{prime_factors, rat, squarefree_part, Rational};
use crate::divpoly::{preimage_poly, Curve};
use crate::error::{Error, Result};
use crate::example;

/// `y^2 = (x - alpha)(x - beta)(x - gamma)` with `alpha + beta + gamma = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreCurve {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
}

impl LegendreCurve {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self> {
        if !(&alpha + &beta + &gamma).is_zero() {
            return Err(Error::invalid("alpha + beta + gamma must be 0"));
        }
        if alpha == beta || beta == gamma || alpha == gamma {
            return Err(Error::SingularCurve);
        }
        Ok(LegendreCurve { alpha, beta, gamma })
    }

    pub fn from_ints(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        Self::new(rat(alpha), rat(beta), rat(gamma))
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// The short form `b = ab + bc + ca`, `c = -abc`.
    pub fn short(&self) -> Curve {
        let (a, b, g) = (&self.alpha, &self.beta, &self.gamma);
        Curve::new(a * b + b * g + a * g, -(a * b * g)).expect("distinct roots")
    }

    pub fn two_torsion(&self) -> [Rational; 3] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone()]
    }
}


/// `delta s^2 = delta^2 t^4 - 6 alpha delta t^2 + (beta - gamma)^2`, stored
/// divided by `delta` as `s^2 = a4 t^4 + a2 t^2 + a0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve {
    pub delta: BigInt,
    pub a4: Rational,
    pub a2: Rational,
    pub a0: Rational,
}

impl QuarticCurve {
    pub fn rhs(&self, t: &Rational) -> Rational {
        let t2 = t * t;
        &self.a4 * &t2 * &t2 + &self.a2 * &t2 + &self.a0
    }

    pub fn contains(&self, s: &Rational, t: &Rational) -> bool {
        s * s == self.rhs(t)
    }

    /// Rational points `(s, t)` with `t = n/d`, `|n| <= height`,
    /// `1 <= d <= max_den`. A bounded search for tests and demos, not a
    /// descent.
    pub fn search_points(&self, height: i64, max_den: i64) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        for d in 1..=max_den {
            for n in -height..=height {
                if num_integer::gcd(n, d) != 1 {
                    continue;
                }
                let t = Rational::new(n.into(), d.into());
                if let Some(s) = rational_sqrt(&self.rhs(&t)) {
                    out.push((s, t));
                }
            }
        }
        out
    }
}

impl std::fmt::Display for QuarticCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "s^2 = {}*t^4 + {}*t^2 + {}", self.a4, self.a2, self.a0)
    }
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root, if it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = bigint_sqrt_exact(q.numer())?;
    let d = bigint_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn quartic_model(curve: &LegendreCurve) -> Result<QuarticCurve> {
    let prod = (&curve.alpha - &curve.beta) * (&curve.beta - &curve.gamma);
    if prod.is_zero() {
        return Err(Error::SingularCurve);
    }
    let delta = squarefree_part(&prod)?;
    let d = Rational::from_integer(delta.clone());
    let bg = &curve.beta - &curve.gamma;
    Ok(QuarticCurve {
        a4: d.clone(),
        a2: Rational::from_integer((-6).into()) * &curve.alpha,
        a0: &bg * &bg / &d,
        delta,
    })
}

/// A point on a short Weierstrass curve with coordinates in a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPoint {
    tower: Tower,
    coords: Option<(MultiQuadElement, MultiQuadElement)>,
}

impl TowerPoint {
    pub fn infinity(tower: &Tower) -> Self {
        TowerPoint { tower: tower.clone(), coords: None }
    }

    /// Checks `y^2 = x^3 + bx + c` exactly.
    pub fn new(curve: &Curve, x: MultiQuadElement, y: MultiQuadElement) -> Result<Self> {
        if x.tower() != y.tower() {
            return Err(Error::IncompatibleTowers);
        }
        if !on_curve(curve, &x, &y) {
            return Err(Error::NotOnCurve);
        }
        Ok(TowerPoint { tower: x.tower().clone(), coords: Some((x, y)) })
    }

    pub fn rational(curve: &Curve, tower: &Tower, x: Rational, y: Rational) -> Result<Self> {
        Self::new(curve, tower.rational(x), tower.rational(y))
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }

    pub fn x(&self) -> Option<&MultiQuadElement> {
        self.coords.as_ref().map(|c| &c.0)
    }

    pub fn y(&self) -> Option<&MultiQuadElement> {
        self.coords.as_ref().map(|c| &c.1)
    }

    /// Rational coordinates, when every irrational coordinate vanishes.
    pub fn as_rational(&self) -> Option<(Rational, Rational)> {
        let (x, y) = self.coords.as_ref()?;
        Some((x.as_rational()?.clone(), y.as_rational()?.clone()))
    }

    pub fn neg(&self) -> Self {
        TowerPoint {
            tower: self.tower.clone(),
            coords: self.coords.as_ref().map(|(x, y)| (x.clone(), -y)),
        }
    }

    /// Applies the field automorphism flipping the radicals in `flips`.
    pub fn conjugate(&self, flips: usize) -> Self {
        TowerPoint {
            tower: self.tower.clone(),
            coords: self.coords.as_ref().map(|(x, y)| (x.conjugate(flips), y.conjugate(flips))),
        }
    }

    /// Embeds into a larger tower whose radicands include this one's.
    pub fn lift_to(&self, target: &Tower) -> Result<Self> {
        let coords = match &self.coords {
            None => None,
            Some((x, y)) => Some((embed(x, target)?, embed(y, target)?)),
        };
        Ok(TowerPoint { tower: target.clone(), coords })
    }
}

impl std::fmt::Display for TowerPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.coords {
            None => write!(f, "O"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}

fn embed(x: &MultiQuadElement, target: &Tower) -> Result<MultiQuadElement> {
    let src = x.tower().radicands();
    let pos: Vec<usize> = src
        .iter()
        .map(|d| {
            target
                .radicands()
                .iter()
                .position(|e| e == d)
                .ok_or_else(|| Error::NotInTower(format!("sqrt({d})")))
        })
        .collect::<Result<_>>()?;
    let mut coords = vec![Rational::zero(); target.degree()];
    for (mask, c) in x.coords().iter().enumerate() {
        let m: usize = pos.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| 1 << p).sum();
        coords[m] = c.clone();
    }
    MultiQuadElement::new(target, coords)
}

fn on_curve(curve: &Curve, x: &MultiQuadElement, y: &MultiQuadElement) -> bool {
    let rhs = &(&(x * x) * x) + &(&x.scale(curve.b()) + &x.tower().rational(curve.c().clone()));
    y * y == rhs
}

fn same_tower(p: &TowerPoint, q: &TowerPoint) -> Result<()> {
    if p.tower != q.tower {
        return Err(Error::IncompatibleTowers);
    }
    Ok(())
}

pub fn point_add(curve: &Curve, p: &TowerPoint, q: &TowerPoint) -> Result<TowerPoint> {
    same_tower(p, q)?;
    let ((x1, y1), (x2, y2)) = match (&p.coords, &q.coords) {
        (None, _) => return Ok(q.clone()),
        (_, None) => return Ok(p.clone()),
        (Some(a), Some(b)) => (a, b),
    };
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return Ok(TowerPoint::infinity(&p.tower));
        }
        let three = Rational::from_integer(3.into());
        let num = &(x1 * x1).scale(&three) + &p.tower.rational(curve.b().clone());
        num.checked_div(&y1.scale(&Rational::from_integer(2.into())))?
    } else {
        (y2 - y1).checked_div(&(x2 - x1))?
    };
    let x3 = &(&(&lambda * &lambda) - x1) - x2;
    let y3 = &(&lambda * &(x1 - &x3)) - y1;
    Ok(TowerPoint { tower: p.tower.clone(), coords: Some((x3, y3)) })
}

pub fn point_sub(curve: &Curve, p: &TowerPoint, q: &TowerPoint) -> Result<TowerPoint> {
    point_add(curve, p, &q.neg())
}

/// `[k] P` by double-and-add; negative `k` negates.
pub fn point_mul(curve: &Curve, p: &TowerPoint, k: i64) -> Result<TowerPoint> {
    let mut acc = TowerPoint::infinity(&p.tower);
    let mut base = if k < 0 { p.neg() } else { p.clone() };
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = point_add(curve, &acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = point_add(curve, &base, &base)?;
        }
    }
    Ok(acc)
}

/// The tower `Q(sqrt(delta))`, or `Q` when `delta = 1`.
pub fn quadratic_tower(delta: &BigInt) -> Result<Tower> {
    if delta.is_one() {
        return Ok(Tower::rationals());
    }
    let d = delta.to_i64().ok_or_else(|| Error::InvalidTower(format!("radicand {delta} too large")))?;
    Tower::new(vec![d])
}

/// `D = (u0 + u1 sqrt(delta), t sqrt(delta) (u - alpha))` with `u1 = s/2`,
/// `u0 = (t^2 delta - alpha)/2`.
pub fn lift_quartic_point(
    q: &QuarticCurve,
    s: &Rational,
    t: &Rational,
    curve: &LegendreCurve,
) -> Result<TowerPoint> {
    if !q.contains(s, t) {
        return Err(Error::NotOnQuartic);
    }
    let tower = quadratic_tower(&q.delta)?;
    let delta = Rational::from_integer(q.delta.clone());
    let sqrt_delta = tower.sqrt(&delta)?;
    let half = Rational::new(1.into(), 2.into());
    let u0 = (t * t * &delta - &curve.alpha) * &half;
    let u1 = s * &half;
    let u = &tower.rational(u0) + &sqrt_delta.scale(&u1);
    let v = &sqrt_delta.scale(t) * &(&u - &tower.rational(curve.alpha.clone()));
    TowerPoint::new(&curve.short(), u, v)
}

/// `-1` (if needed) and the primes dividing the squarefree parts of `qs`,
/// in that order.
pub fn tower_for_radicands(qs: &[Rational]) -> Result<Tower> {
    let mut radicands: Vec<i64> = Vec::new();
    let mut negative = false;
    for q in qs {
        if q.is_zero() {
            continue;
        }
        let d = squarefree_part(q)?;
        negative |= d.is_negative();
        for p in prime_factors(&d) {
            let p = p.to_i64().ok_or_else(|| Error::InvalidTower(format!("radicand {p} too large")))?;
            if !radicands.contains(&p) {
                radicands.push(p);
            }
        }
    }
    radicands.sort_unstable();
    if negative {
        radicands.insert(0, -1);
    }
    Tower::new(radicands)
}

#[derive(Clone, Debug)]
pub struct FourTorsion {
    pub a_prime: TowerPoint,
    pub b_prime: TowerPoint,
    pub a: TowerPoint,
    pub b: TowerPoint,
    pub doubles_ok: bool,
}

/// `A' = (alpha + sqrt((alpha-beta)(alpha-gamma)),
/// (alpha-beta) sqrt(alpha-gamma) + (alpha-gamma) sqrt(alpha-beta))` and
/// `B'` with `alpha`, `beta` swapped. Radicals that are rational drop out of
/// the tower.
pub fn four_torsion_generators(curve: &LegendreCurve) -> Result<FourTorsion> {
    let (al, be, ga) = (&curve.alpha, &curve.beta, &curve.gamma);
    let diffs = [al - be, al - ga, be - al, be - ga];
    let tower = tower_for_radicands(&diffs)?;
    let e = curve.short();
    let gen = |r: &Rational, d1: &Rational, d2: &Rational| -> Result<TowerPoint> {
        // sqrt(d1 d2) must be read as sqrt(d1) sqrt(d2) when both are negative.
        let (s1, s2) = (tower.sqrt(d1)?, tower.sqrt(d2)?);
        let x = &tower.rational(r.clone()) + &(&s1 * &s2);
        let y = &s2.scale(d1) + &s1.scale(d2);
        TowerPoint::new(&e, x, y)
    };
    let a_prime = gen(al, &diffs[0], &diffs[1])?;
    let b_prime = gen(be, &diffs[2], &diffs[3])?;
    let a = TowerPoint::rational(&e, &tower, al.clone(), Rational::zero())?;
    let b = TowerPoint::rational(&e, &tower, be.clone(), Rational::zero())?;
    let doubles_ok = point_mul(&e, &a_prime, 2)? == a && point_mul(&e, &b_prime, 2)? == b;
    Ok(FourTorsion { a_prime, b_prime, a, b, doubles_ok })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbscissaCheck {
    pub index: usize,
    pub abscissa: String,
    pub is_root: bool,
    pub ordinate: Option<String>,
    pub on_curve: Option<bool>,
    /// Whether `[m](x, y)` equals `P` or `-P`.
    pub divides_point: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbscissaReport {
    pub m: u32,
    pub point: [String; 2],
    pub tower: Vec<i64>,
    pub checks: Vec<AbscissaCheck>,
    pub all_roots: bool,
    pub all_on_curve: bool,
}

/// Evaluates the preimage polynomial of `[m]` over `point` at each candidate
/// abscissa, and checks the matching ordinates when given.
pub fn verify_divisor_abscissas(
    curve: &Curve,
    point: (&Rational, &Rational),
    m: u32,
    abscissas: &[MultiQuadElement],
    ordinates: Option<&[MultiQuadElement]>,
) -> Result<AbscissaReport> {
    if !curve.contains(point.0, point.1) {
        return Err(Error::NotOnCurve);
    }
    if let Some(ys) = ordinates {
        if ys.len() != abscissas.len() {
            return Err(Error::invalid("ordinate count differs from abscissa count"));
        }
    }
    let phi = preimage_poly(curve, m, point.0)?;
    let tower = abscissas.first().map(|x| x.tower().clone()).unwrap_or_else(Tower::rationals);
    let target = TowerPoint::rational(curve, &tower, point.0.clone(), point.1.clone())?;
    let mut checks = Vec::new();
    for (i, x) in abscissas.iter().enumerate() {
        if x.tower() != &tower {
            return Err(Error::IncompatibleTowers);
        }
        let is_root = x.eval_poly(&phi).is_zero();
        let (ordinate, on_curve, divides_point) = match ordinates {
            None => (None, None, None),
            Some(ys) => {
                let y = &ys[i];
                let ok = on_curve(curve, x, y);
                let divides = if ok {
                    let d = TowerPoint::new(curve, x.clone(), y.clone())?;
                    let q = point_mul(curve, &d, m as i64)?;
                    Some(q == target || q == target.neg())
                } else {
                    None
                };
                (Some(y.to_string()), Some(ok), divides)
            }
        };
        checks.push(AbscissaCheck { index: i + 1, abscissa: x.to_string(), is_root, ordinate, on_curve, divides_point });
    }
    Ok(AbscissaReport {
        m,
        point: [point.0.to_string(), point.1.to_string()],
        tower: tower.radicands().to_vec(),
        all_roots: checks.iter().all(|c| c.is_root),
        all_on_curve: checks.iter().all(|c| c.on_curve != Some(false)),
        checks,
    })
}

/// The 16 listed 4-divisor coordinates checked against `curve`.
pub fn example_abscissa_report(curve: &Curve) -> Result<AbscissaReport> {
    let tower = example::tower();
    let xs = example::ABSCISSAS.iter().map(|t| example::element(&tower, t)).collect::<Result<Vec<_>>>()?;
    let ys = example::ORDINATES.iter().map(|t| example::element(&tower, t)).collect::<Result<Vec<_>>>()?;
    let (px, py) = example::POINT;
    verify_divisor_abscissas(curve, (&rat(px), &rat(py)), example::M, &xs, Some(&ys))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescentReport {
    pub legendre: [String; 3],
    pub b: String,
    pub c: String,
    pub delta: String,
    pub quartic: [String; 3],
    pub quartic_point: [String; 2],
    pub divisor: [String; 2],
    pub multiple: u32,
    pub multiple_point: Option<[String; 2]>,
    pub conjugate_difference: Option<[String; 2]>,
    pub a_prime: [String; 2],
    pub b_prime: [String; 2],
    pub two_a_prime: String,
    pub two_b_prime: String,
}

fn coords_strings(p: &TowerPoint) -> [String; 2] {
    match (p.x(), p.y()) {
        (Some(x), Some(y)) => [x.to_string(), y.to_string()],
        _ => ["O".into(), "O".into()],
    }
}

/// The whole chain for one quartic point: model, lift, `[m] D`, the
/// conjugate difference `D^sigma - D` and the 4-torsion generators.
pub fn descent_chain(curve: &LegendreCurve, s: &Rational, t: &Rational, m: u32) -> Result<DescentReport> {
    let q = quartic_model(curve)?;
    let d = lift_quartic_point(&q, s, t, curve)?;
    let e = curve.short();
    let md = point_mul(&e, &d, m as i64)?;
    let flips = d.tower().degree() - 1;
    let diff = point_sub(&e, &d.conjugate(flips), &d)?;
    let torsion = four_torsion_generators(curve)?;
    let rational = |p: &TowerPoint| p.as_rational().map(|(x, y)| [x.to_string(), y.to_string()]);
    Ok(DescentReport {
        legendre: curve.two_torsion().map(|r| r.to_string()),
        b: e.b().to_string(),
        c: e.c().to_string(),
        delta: q.delta.to_string(),
        quartic: [q.a4.to_string(), q.a2.to_string(), q.a0.to_string()],
        quartic_point: [s.to_string(), t.to_string()],
        divisor: coords_strings(&d),
        multiple: m,
        multiple_point: rational(&md),
        conjugate_difference: rational(&diff),
        a_prime: coords_strings(&torsion.a_prime),
        b_prime: coords_strings(&torsion.b_prime),
        two_a_prime: point_mul(&e, &torsion.a_prime, 2)?.to_string(),
        two_b_prime: point_mul(&e, &torsion.b_prime, 2)?.to_string(),
    })
}

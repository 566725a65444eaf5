//! Exact arithmetic in multiquadratic towers `Q(sqrt(d_1), ..., sqrt(d_k))`.
//!
//! An element is stored by its `2^k` rational coordinates on the basis
//! `prod_{i in S} sqrt(d_i)`, `S` a subset of the radicand indices encoded as
//! a bitmask (bit `i` set means `sqrt(d_i)` is a factor). Composite radicals
//! are products of basis radicals: in the tower `{-1, 2, 3, 7}`, `sqrt(-6)`
//! is `sqrt(-1)*sqrt(2)*sqrt(3)` and `sqrt(42)` is `sqrt(2)*sqrt(3)*sqrt(7)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{squarefree_decompose, to_f64, Rational};
use crate::error::{Error, Result};

/// An ordered list of pairwise-coprime squarefree radicands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    radicands: Arc<[i64]>,
}

impl Tower {
    pub fn new(radicands: Vec<i64>) -> Result<Tower> {
        if radicands.len() > 16 {
            return Err(Error::InvalidTower("more than 16 radicands".into()));
        }
        for (i, &d) in radicands.iter().enumerate() {
            if d == 0 || d == 1 {
                return Err(Error::InvalidTower(format!("radicand {d} not allowed")));
            }
            let (_, square, _) = squarefree_decompose(&BigInt::from(d));
            if !square.is_one() {
                return Err(Error::InvalidTower(format!("radicand {d} is not squarefree")));
            }
            for &e in &radicands[..i] {
                if e == d || d.unsigned_abs().gcd(&e.unsigned_abs()) != 1 {
                    return Err(Error::InvalidTower(format!(
                        "radicands {e} and {d} are not coprime"
                    )));
                }
            }
        }
        Ok(Tower { radicands: radicands.into() })
    }

    /// The tower `Q` itself.
    pub fn rationals() -> Tower {
        Tower { radicands: Arc::from(Vec::new()) }
    }

    pub fn radicands(&self) -> &[i64] {
        &self.radicands
    }

    /// `[K : Q] = 2^k`.
    pub fn degree(&self) -> usize {
        1 << self.radicands.len()
    }

    fn mask_product(&self, mask: usize) -> BigInt {
        self.radicands
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(BigInt::one(), |acc, (_, &d)| acc * d)
    }

    pub fn rational(&self, q: Rational) -> MultiQuadElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = q;
        MultiQuadElement { tower: self.clone(), coords }
    }

    pub fn int(&self, n: i64) -> MultiQuadElement {
        self.rational(Rational::from_integer(n.into()))
    }

    pub fn zero(&self) -> MultiQuadElement {
        self.rational(Rational::zero())
    }

    pub fn one(&self) -> MultiQuadElement {
        self.rational(Rational::one())
    }

    /// The basis element `prod_{i in mask} sqrt(d_i)` scaled by `q`.
    pub fn basis(&self, mask: usize, q: Rational) -> MultiQuadElement {
        assert!(mask < self.degree(), "basis mask out of range");
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[mask] = q;
        MultiQuadElement { tower: self.clone(), coords }
    }

    /// `sqrt(d)` for a radicand `d` of the tower.
    pub fn radical(&self, d: i64) -> Result<MultiQuadElement> {
        let i = self
            .radicands
            .iter()
            .position(|&r| r == d)
            .ok_or_else(|| Error::NotInTower(format!("sqrt({d})")))?;
        Ok(self.basis(1 << i, Rational::one()))
    }

    /// A square root of `q` as a product of basis radicals times a rational
    /// (for negative `q` the factor `sqrt(-1)` is used when available).
    pub fn sqrt(&self, q: &Rational) -> Result<MultiQuadElement> {
        if q.is_zero() {
            return Ok(self.zero());
        }
        let n = q.numer() * q.denom();
        let (sign, square, mut core) = squarefree_decompose(&n);
        let mut mask = 0usize;
        let mut product_sign = 1i8;
        for (i, &d) in self.radicands.iter().enumerate() {
            let a = BigInt::from(d.unsigned_abs());
            if d != -1 && (&core % &a).is_zero() {
                core /= &a;
                mask |= 1 << i;
                if d < 0 {
                    product_sign = -product_sign;
                }
            }
        }
        if !core.is_one() {
            return Err(Error::NotInTower(format!("sqrt({q})")));
        }
        if product_sign != sign {
            let i = self
                .radicands
                .iter()
                .position(|&r| r == -1)
                .ok_or_else(|| Error::NotInTower(format!("sqrt({q})")))?;
            mask |= 1 << i;
        }
        let w = Rational::new(square, q.denom().clone());
        Ok(self.basis(mask, w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiQuadElement {
    tower: Tower,
    coords: Vec<Rational>,
}

impl MultiQuadElement {
    pub fn new(tower: &Tower, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != tower.degree() {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                tower.degree(),
                coords.len()
            )));
        }
        Ok(MultiQuadElement { tower: tower.clone(), coords })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::IncompatibleTowers)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    /// Product in the `2^k`-dimensional algebra, `sqrt(d_i)^2 = d_i`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coords.len();
        let mut out = vec![Rational::zero(); n];
        for (s, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let common = s & t;
                let prod = a * b;
                out[s ^ t] += if common == 0 {
                    prod
                } else {
                    prod * Rational::from_integer(self.tower.mask_product(common))
                };
            }
        }
        Ok(MultiQuadElement { tower: self.tower.clone(), coords: out })
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        MultiQuadElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        MultiQuadElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Image under the automorphism flipping the sign of `sqrt(d_i)` for
    /// every bit `i` set in `flips`.
    pub fn conjugate(&self, flips: usize) -> Self {
        MultiQuadElement {
            tower: self.tower.clone(),
            coords: self
                .coords
                .iter()
                .enumerate()
                .map(|(s, c)| if (s & flips).count_ones() % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// All `2^k` Galois conjugates, indexed by flip mask (with repeats).
    pub fn conjugates(&self) -> Vec<Self> {
        (0..self.tower.degree()).map(|f| self.conjugate(f)).collect()
    }

    pub fn distinct_conjugates(&self) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::new();
        for c in self.conjugates() {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// `N_{K/Q}(x)`, the product of all `2^k` conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for i in 0..self.tower.radicands.len() {
            acc = &acc * &acc.conjugate(1 << i);
        }
        acc.coords[0].clone()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Multiplying by the conjugate in sqrt(d_i) kills every coordinate
        // involving d_i; after k steps only the rational part is left.
        let mut acc = self.clone();
        let mut cofactor = self.tower.one();
        for i in 0..self.tower.radicands.len() {
            let c = acc.conjugate(1 << i);
            cofactor = &cofactor * &c;
            acc = &acc * &c;
        }
        debug_assert!(acc.is_rational());
        Ok(cofactor.scale(&acc.coords[0].recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.tower.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_poly(&self, f: &UniPoly) -> Self {
        f.coeffs()
            .iter()
            .rev()
            .fold(self.tower.zero(), |acc, c| &(&acc * self) + &self.tower.rational(c.clone()))
    }

    /// Monic minimal polynomial over `Q`: the product of `X - c` over the
    /// distinct conjugates (the sign-flip group is the full Galois group of
    /// the tower, so this product is irreducible).
    pub fn min_poly(&self) -> UniPoly {
        let mut poly: Vec<MultiQuadElement> = vec![self.tower.one()];
        for c in self.distinct_conjugates() {
            // poly *= (X - c)
            let mut next = vec![self.tower.zero(); poly.len() + 1];
            for (i, a) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + a;
                next[i] = &next[i] - &(a * &c);
            }
            poly = next;
        }
        UniPoly::new(
            poly.into_iter()
                .map(|e| {
                    debug_assert!(e.is_rational(), "conjugate product not rational");
                    e.coords[0].clone()
                })
                .collect(),
        )
    }

    /// Value under the embedding `sqrt(d) -> +sqrt(d)` for `d > 0` and
    /// `sqrt(d) -> i*sqrt(|d|)` for `d < 0`.
    pub fn to_complex(&self) -> Complex64 {
        let roots: Vec<Complex64> = self
            .tower
            .radicands
            .iter()
            .map(|&d| {
                if d > 0 {
                    Complex64::new((d as f64).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, (d.unsigned_abs() as f64).sqrt())
                }
            })
            .collect();
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| {
                let basis = roots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .fold(Complex64::new(1.0, 0.0), |acc, (_, r)| acc * r);
                basis * to_f64(c)
            })
            .sum()
    }
}

impl Add for &MultiQuadElement {
    type Output = MultiQuadElement;
    /// Panics on incompatible towers; see [`MultiQuadElement::checked_add`].
    fn add(self, rhs: &MultiQuadElement) -> MultiQuadElement {
        self.checked_add(rhs).expect("incompatible towers")
    }
}

impl Sub for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn sub(self, rhs: &MultiQuadElement) -> MultiQuadElement {
        self.checked_sub(rhs).expect("incompatible towers")
    }
}

impl Mul for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn mul(self, rhs: &MultiQuadElement) -> MultiQuadElement {
        self.checked_mul(rhs).expect("incompatible towers")
    }
}

impl Neg for &MultiQuadElement {
    type Output = MultiQuadElement;
    fn neg(self) -> MultiQuadElement {
        self.scale(&-Rational::one())
    }
}

/// Exact tower product; errors on mismatched radicand lists.
pub fn mq_mul(x: &MultiQuadElement, y: &MultiQuadElement) -> Result<MultiQuadElement> {
    x.checked_mul(y)
}

impl fmt::Display for MultiQuadElement {
    /// Terms in increasing basis-mask order, radicals in tower order, e.g.
    /// `3 + 3*sqrt(-1)*sqrt(2)*sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let radicals: Vec<String> = self
                .tower
                .radicands
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .map(|(_, d)| format!("sqrt({d})"))
                .collect();
            let abs = c.abs();
            if radicals.is_empty() {
                write!(f, "{sign}{abs}")?;
            } else if abs.is_one() {
                write!(f, "{sign}{}", radicals.join("*"))?;
            } else {
                write!(f, "{sign}{abs}*{}", radicals.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

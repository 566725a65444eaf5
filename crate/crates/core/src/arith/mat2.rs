//! 2x2 matrices over `Z/nZ`.

use std::fmt;

use num_integer::Integer;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// A 2x2 matrix with entries reduced mod `modulus`, row-major `[a, b, c, d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2Mod {
    pub modulus: u64,
    pub entries: [u64; 4],
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

impl Mat2Mod {
    pub fn new(modulus: u64, entries: [i64; 4]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        let m = modulus as i128;
        Ok(Mat2Mod {
            modulus,
            entries: entries.map(|e| (e as i128).rem_euclid(m) as u64),
        })
    }

    pub fn identity(modulus: u64) -> Self {
        Mat2Mod { modulus, entries: [1 % modulus, 0, 0, 1 % modulus] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    /// Entries as signed representatives in `(-n/2, n/2]`.
    pub fn signed_entries(&self) -> [i64; 4] {
        let n = self.modulus;
        self.entries.map(|e| if 2 * e > n { e as i64 - n as i64 } else { e as i64 })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        let add = |x: u64, y: u64| ((x as u128 + y as u128) % n as u128) as u64;
        Mat2Mod {
            modulus: n,
            entries: [
                add(mulmod(a, e, n), mulmod(b, g, n)),
                add(mulmod(a, f, n), mulmod(b, h, n)),
                add(mulmod(c, e, n), mulmod(d, g, n)),
                add(mulmod(c, f, n), mulmod(d, h, n)),
            ],
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        (mulmod(a, d, n) + n - mulmod(b, c, n)) % n
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.modulus) == 1
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.modulus;
        let inv = mod_inverse(self.det(), n).ok_or(Error::SingularElement)?;
        let [a, b, c, d] = self.entries;
        let neg = |x: u64| (n - x) % n;
        Ok(Mat2Mod {
            modulus: n,
            entries: [mulmod(d, inv, n), mulmod(neg(b), inv, n), mulmod(neg(c), inv, n), mulmod(a, inv, n)],
        })
    }

    /// Least `t >= 1` with `self^t = Id`.
    pub fn order(&self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::SingularElement);
        }
        let id = Self::identity(self.modulus);
        let mut acc = *self;
        let mut t = 1;
        while acc != id {
            acc = acc.mul_unchecked(self);
            t += 1;
        }
        Ok(t)
    }

    /// Matrix-vector product on `(Z/n)^2`.
    pub fn apply(&self, v: [u64; 2]) -> [u64; 2] {
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        [
            (mulmod(a, v[0], n) + mulmod(b, v[1], n)) % n,
            (mulmod(c, v[0], n) + mulmod(d, v[1], n)) % n,
        ]
    }

    /// `self - Id`.
    pub fn minus_identity(&self) -> Self {
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        Mat2Mod { modulus: n, entries: [(a + n - 1) % n, b, c, (d + n - 1) % n] }
    }

    /// Reduction to a divisor `k` of the modulus.
    pub fn reduce(&self, k: u64) -> Result<Self> {
        if k == 0 || self.modulus % k != 0 {
            return Err(Error::invalid(format!("{k} does not divide {}", self.modulus)));
        }
        Ok(Mat2Mod { modulus: k, entries: self.entries.map(|e| e % k) })
    }
}

pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(n as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(n as i128) as u64)
}

/// Serialized as `{"modulus": n, "matrix": [[a, b], [c, d]]}` with entries
/// in `[0, n)`.
impl Serialize for Mat2Mod {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [a, b, c, d] = self.entries;
        let mut st = s.serialize_struct("Mat2Mod", 2)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("matrix", &[[a, b], [c, d]])?;
        st.end()
    }
}

impl fmt::Display for Mat2Mod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.signed_entries();
        write!(f, "[[{a},{b}],[{c},{d}]] mod {}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(Mat2Mod::identity(4).order().unwrap(), 1);
        let eta = Mat2Mod::new(25, [-1, 1, 0, -1]).unwrap();
        assert_eq!(eta.order().unwrap(), 50);
        let s1 = Mat2Mod::new(4, [-1, 0, 2, -1]).unwrap();
        assert!(s1.pow(2).is_identity());
        let sing = Mat2Mod::new(4, [2, 0, 0, 1]).unwrap();
        assert_eq!(sing.order(), Err(Error::SingularElement));
    }

    #[test]
    fn inverse_and_mismatch() {
        let m = Mat2Mod::new(9, [2, 1, 1, 1]).unwrap();
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        let other = Mat2Mod::identity(4);
        assert_eq!(m.mul(&other), Err(Error::ModulusMismatch(9, 4)));
    }

    #[test]
    fn display_signed() {
        let s1 = Mat2Mod::new(4, [-1, 0, 2, -1]).unwrap();
        assert_eq!(s1.to_string(), "[[-1,0],[2,-1]] mod 4");
    }
}

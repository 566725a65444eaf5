//! Fixed data of the worked example: the curve `y^2 = x^3 - 171x + 810`
//! (Legendre roots 9, 6, -15), the point `P = (10, 10) = [4]D`, its
//! degree-16 preimage polynomial under `[4]`, the explicit 4-divisor
//! coordinates and the prime split below 1000.

use crate::arith::multiquad::{MultiQuadElement, Tower};
use crate::arith::rational::rat;
use crate::divpoly::Curve;
use crate::error::Result;

pub const B: i64 = -171;
pub const C: i64 = 810;
pub const LEGENDRE: (i64, i64, i64) = (9, 6, -15);
pub const POINT: (i64, i64) = (10, 10);
pub const M: u32 = 4;
pub const TOWER: [i64; 4] = [-1, 2, 3, 7];
pub const GROUP_ORDER: u64 = 16;

pub fn curve() -> Curve {
    Curve::from_ints(B, C).expect("nonsingular")
}

pub fn tower() -> Tower {
    Tower::new(TOWER.to_vec()).expect("valid tower")
}

/// Coefficients of the preimage polynomial, from `x^16` down to `x^0`.
pub const PHI4_DESC: [i64; 17] = [
    1,
    -160,
    6840,
    -139680,
    4862268,
    -134693280,
    2294454600,
    -32425103520,
    300976938918,
    1203164578080,
    -68296345025400,
    695993396274720,
    -1996085493644292,
    -14987477917513440,
    146812808536034040,
    -478587272134802400,
    570463955816032161,
];

/// A tower element written as `sum coeff * sqrt(radicand)`; radicand `1`
/// is the rational part.
pub type Terms = &'static [(i64, i64)];

pub const ABSCISSAS: [Terms; 16] = [
    &[(-1, 1), (2, 7)],
    &[(-1, 1), (-2, 7)],
    &[(27, 1), (-6, 7)],
    &[(27, 1), (6, 7)],
    &[(-3, 1), (6, -3), (6, 3), (-12, -1)],
    &[(6, -3), (-6, 3), (12, -1), (-3, 1)],
    &[(-3, 1), (-6, -3), (6, 3), (12, -1)],
    &[(-3, 1), (-6, -3), (-6, 3), (-12, -1)],
    &[(3, 1), (3, -6), (6, -3), (-3, 2)],
    &[(3, 1), (3, -6), (-6, -3), (3, 2)],
    &[(3, 1), (-3, -6), (6, -3), (3, 2)],
    &[(3, 1), (-3, -6), (-6, -3), (-3, 2)],
    &[(27, 1), (-3, 42), (6, 21), (-21, 2)],
    &[(27, 1), (-3, 42), (-6, 21), (21, 2)],
    &[(27, 1), (3, 42), (6, 21), (21, 2)],
    &[(27, 1), (3, 42), (-6, 21), (-21, 2)],
];

/// One of the two ordinates `±y` above each abscissa.
pub const ORDINATES: [Terms; 16] = [
    &[(14, 1), (-10, 7)],
    &[(14, 1), (10, 7)],
    &[(126, 1), (-54, 7)],
    &[(126, 1), (54, 7)],
    &[(72, 1), (-6, -3), (-42, 3)],
    &[(72, 1), (-6, -3), (42, 3)],
    &[(72, 1), (6, -3), (-42, 3)],
    &[(72, 1), (6, -3), (42, 3)],
    &[(36, 1), (27, 2), (-15, -6), (-12, -3)],
    &[(36, 1), (-27, 2), (-15, -6), (12, -3)],
    &[(36, 1), (-27, 2), (15, -6), (-12, -3)],
    &[(36, 1), (27, 2), (15, -6), (12, -3)],
    &[(252, 1), (-39, 42), (60, 21), (-189, 2)],
    &[(252, 1), (-39, 42), (-60, 21), (189, 2)],
    &[(252, 1), (39, 42), (60, 21), (189, 2)],
    &[(252, 1), (39, 42), (-60, 21), (-189, 2)],
];

/// Builds `sum coeff * sqrt(radicand)` in `tower`, expanding composite
/// radicals into products of basis radicals.
pub fn element(tower: &Tower, terms: &[(i64, i64)]) -> Result<MultiQuadElement> {
    let mut acc = tower.zero();
    for &(coeff, d) in terms {
        acc = &acc + &tower.sqrt(&rat(d))?.scale(&rat(coeff));
    }
    Ok(acc)
}

/// Primes below 1000 at which the preimage polynomial has a root in `Q_p`.
pub const SOLVABLE_PRIMES: [u64; 123] = [
    3, 7, 13, 17, 19, 29, 31, 37, 41, 47, 53, 59, 61, 73, 79, 83, 89, 97, 103, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 167, 181, 193, 197, 199, 223, 227, 229, 233, 241, 251, 257, 271, 277,
    281, 283, 307, 311, 313, 317, 337, 349, 353, 367, 373, 383, 389, 397, 401, 409, 419, 421, 433,
    439, 449, 457, 463, 467, 479, 487, 503, 521, 523, 541, 557, 563, 569, 577, 587, 593, 601, 607,
    613, 617, 619, 631, 641, 643, 647, 653, 661, 673, 691, 701, 709, 719, 727, 733, 751, 757, 761,
    769, 787, 809, 811, 821, 823, 829, 839, 853, 857, 859, 877, 881, 887, 919, 929, 937, 953, 967,
    971, 977, 983, 991, 997,
];

/// Primes below 1000 at which it has none.
pub const UNSOLVABLE_PRIMES: [u64; 45] = [
    2, 5, 11, 23, 43, 67, 71, 101, 107, 163, 173, 179, 191, 211, 239, 263, 269, 293, 331, 347, 359,
    379, 431, 443, 461, 491, 499, 509, 547, 571, 599, 659, 677, 683, 739, 743, 773, 797, 827, 863,
    883, 907, 911, 941, 947,
];

/// The four listed generators of the Galois image, mod 4, row-major.
pub const GENERATORS: [[i64; 4]; 4] = [[-1, 0, 2, -1], [1, 2, 2, -1], [1, 0, 2, 1], [-1, 0, 0, 1]];

/// Parameters `(x, y, z, w)` of the elements where the cocycle `(2w, 0)`
/// violates the local condition.
pub const FAILING_PARAMS: [[u64; 4]; 4] = [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1], [1, 0, 1, 1]];

/// Rational points `(s, t)` on the auxiliary quartic.
pub const QUARTIC_POINTS: [(i64, i64); 3] = [(4, 1), (12, 3), (204, 9)];

/// Named curves shipped as fixtures: `(name, b, c)`.
pub const NAMED_CURVES: [(&str, i64, i64); 5] = [
    ("paper-sec6", B, C),
    ("torsion7-a", -3483, 121014),
    ("torsion7-b", -1323, 6395814),
    ("torsion5-a", -432, 8208),
    ("torsion5-b", -27, 55350),
];

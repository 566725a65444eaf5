//! Exact computations around the division fields of elliptic curves
//! `y^2 = x^3 + bx + c` over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: rationals, dense polynomials, multiquadratic towers and 2x2
//!   matrices over `Z/nZ`.
//! - [`heights`]: logarithmic Weil heights of rationals, polynomials and
//!   tower elements.
//! - [`divpoly`]: curves, division polynomials, multiplication-by-m maps and
//!   the coefficient/height bounds built on them.
//! - [`bounds`]: curve and division-polynomial discriminants, the
//!   discriminant height bound `B(m,b,c)` and the resulting prime budget.
//! - [`padic`]: root existence in `Z_p`/`Q_p`, local divisibility of
//!   rational points and prime sweeps.
//! - [`galois`]: finite subgroups of `GL_2(Z/nZ)`, cocycles, local
//!   conditions and brute-force `H^1` / `H^1_loc`.
//! - [`descent`]: Legendre curves, the auxiliary quartic, points over
//!   multiquadratic towers and the verification of 4-divisors.
//! - [`example`]: the fixed data of the worked pseudodivisible-point example
//!   (curve, generators, prime lists, the degree-16 preimage polynomial).

pub mod arith;
pub mod bounds;
pub mod descent;
pub mod divpoly;
pub mod error;
pub mod example;
pub mod galois;
pub mod heights;
pub mod padic;
pub mod primes;

#[cfg(test)]
mod props;

pub use error::{Error, Result};

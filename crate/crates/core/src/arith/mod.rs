//! Exact arithmetic foundation: rationals, dense univariate polynomials,
//! multiquadratic towers and 2x2 matrices over residue rings.

pub mod mat2;
pub mod multiquad;
pub mod poly;
pub mod rational;

pub use mat2::Mat2Mod;
pub use multiquad::{MultiQuadElement, Tower};
pub use poly::{IntPoly, UniPoly};
pub use rational::{parse_rational, rat, ratio, Rational};

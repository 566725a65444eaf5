//! Property-based suites over the public API, one file per module.

mod arith;
mod bounds;
mod descent;
mod divpoly;
mod galois;
mod heights;
mod padic;

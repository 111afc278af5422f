//! Exact construction of cyclotomic and inverse cyclotomic polynomials,
//! their coefficient heights, the maximal height of divisors of `x^n - 1`,
//! and checkers for the known coefficient bounds.

pub mod arith;
pub mod bounds;
pub mod cyclo;
pub mod decomp;
pub mod error;
pub mod heights;
pub mod par;
pub mod polyring;
pub mod verify;

pub use error::{Error, Result};
pub use polyring::{BinomialQuotient, IntPoly, SeriesPrefix};

//! Exact constructions behind quantified integer programming hardness
//! reductions, with brute-force oracles that check them at small scale.
//!
//! * [`geometry`]: exact V/H conversion, lattice-point enumeration.
//! * [`fib`]: the Fibonacci point gadget and its regions.
//! * [`gsa`]: simultaneous approximation instances and their polygons.
//! * [`compress`]: folding a union of polytopes into one polytope.
//! * [`reductions`]: the instance compilers.
//! * [`oracle`]: ground truth by enumeration.
//! * [`sweep`]: deterministic instance grids.

pub mod arith;
pub mod compress;
pub mod error;
pub mod fib;
pub mod geometry;
pub mod gsa;
pub mod oracle;
pub mod reductions;
pub mod sweep;

pub use arith::Rational;
pub use error::{Error, Result};

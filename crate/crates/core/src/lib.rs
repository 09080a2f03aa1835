//! Exact arithmetic workbench for quadratic rational maps with a periodic
//! critical point: dynatomic polynomials, moduli-space curve equations,
//! dynamical modular curves and rational preperiodic portraits.

pub mod arith;
pub mod cli;
pub mod curves;
pub mod dynamics;
pub mod error;
pub mod fsutil;
pub mod moduli;
pub mod poly;
pub mod portraits;
pub mod ring;

pub use arith::{Integer, ProjPoint, Quad, Rational};
pub use error::{Error, Result};
pub use poly::{MultiPoly, RatFunc, UniPoly};

//! Certified numerics for the complete elliptic integral of the first kind.
//!
//! The crate computes the power-series coefficients of `exp(K(√x))` exactly
//! as polynomials in π times `e^{π/2}`, certifies sign and monotonicity
//! patterns of the derived coefficient sequences with adaptive-precision
//! interval arithmetic, and verifies functional inequalities for `K(r)` on
//! grids of rational points.

pub mod coeff;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod verify;

pub use error::{Error, Result};

//! Numerical boundary geometry of domains `{r < 0}` in C^n.
//!
//! The crate verifies and estimates the disc property of index k (bidiscs of
//! bi-radius `(c1 δ, c2 δ^{1/k})` centered at `p - δ N_p`), computes Levi
//! forms and contact orders, and measures the Hölder gain of holomorphic
//! Lipschitz functions along complex tangential directions.
//!
//! Modules, bottom-up:
//! - [`defexpr`]: the defining-function expression language
//! - [`numdiff`]: dual-number gradients, Wirtinger derivatives, complex Hessians
//! - [`domains`]: the domain catalog and domain files
//! - [`geometry`]: projection, frames, Levi form, contact order, tangential curves
//! - [`disc`]: bidisc containment, radius profiles, index estimation, sweeps
//! - [`hoelder`]: Hölder exponents, tangential gain, derivative growth
//! - [`report`], [`verify`]: deterministic JSON/CSV output and the acceptance suite

pub mod complex;
pub mod defexpr;
pub mod disc;
pub mod domains;
pub mod error;
pub mod fit;
pub mod geometry;
pub mod hoelder;
pub mod numdiff;
pub mod report;
pub mod verify;

pub use complex::{ComplexPoint, Cx};
pub use error::{Error, EvalError, ParseError, Result};

//! Cesàro means of Dunkl–Hermite expansions, evaluated numerically.
//!
//! The crate is layered bottom-up:
//!
//! - [`specfun`]: Γ, Cesàro coefficients, Hermite/Laguerre functions,
//!   normalized ultraspherical polynomials, modified Bessel functions and the
//!   complex-order `Q` functions.
//! - [`quadrature`]: Gauss–Jacobi rules, radial half-line rules and a graded
//!   rule for endpoint power singularities.
//! - [`kernels`]: projection, Cesàro and radial kernels in every equivalent form.
//! - [`operators`]: the radial operators `T_{N,m}`, mixed norms, norm probes and
//!   the pairing functional.
//! - [`verify`]: tolerance-checked identity runs aggregated into a JSON report.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::too_many_arguments
)]

pub mod error;
pub mod kernels;
pub mod operators;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use specfun::ComplexScalar;

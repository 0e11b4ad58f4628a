//! Scalar special functions with complex orders and parameters.
//!
//! Branch conventions: `ln`, powers and square roots are principal
//! (cut along the negative real axis). [`log_gamma`] is the principal
//! log-Γ, analytic on ℂ minus (-∞, 0].

mod bessel;
mod cesaro;
mod gamma;
mod hermite;
mod laguerre;
mod params;
mod qfun;
mod ultraspherical;

pub use bessel::{bessel_i, bessel_i_reduced};
pub use cesaro::{binomial, cesaro_coeff, cesaro_coeffs};
pub use gamma::{gamma, log_gamma, rgamma};
pub use hermite::{hermite_fn_1d, hermite_fn_table};
pub use laguerre::{laguerre_fn, LaguerreBasis};
pub use params::{critical_index, OrderParams};
pub use qfun::{q_closed_form_m0, q_fn, QFunction, QPolynomialRule};
pub use ultraspherical::{ultraspherical, ultraspherical_deriv, Ultraspherical};

/// Complex scalar used for every complex parameter (ζ, β, ε, δ, λ, …).
pub type ComplexScalar = num_complex::Complex64;

pub(crate) fn c(re: f64) -> ComplexScalar {
    ComplexScalar::new(re, 0.0)
}

pub(crate) fn is_nonpositive_integer(z: ComplexScalar) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

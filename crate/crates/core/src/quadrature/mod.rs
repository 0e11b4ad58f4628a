//! Weighted Gaussian rules on `[−1, 1]`, truncated radial rules on the half-line,
//! and a graded rule for integrands with complex power singularities at the ends.

mod graded;
mod jacobi;
mod radial;
mod rule;

pub use graded::{integrate_endpoint_singular, EndpointPoint, GradedOptions};
pub use jacobi::{gauss_jacobi, gauss_jacobi_cached, gauss_legendre};
pub use radial::{default_r_max, radial_rule, radial_rule_with, RadialOptions};
pub use rule::{QuadratureRule, RuleDomain};

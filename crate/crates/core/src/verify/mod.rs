//! Tolerance-checked sweeps over the identities, bounds and operator
//! properties of the crate, aggregated into a JSON report.
//!
//! A [`CheckSpec`] names a parameter [`Grid`], a [`Comparison`] and an
//! [`Expectation`]. [`run_suite`] evaluates each grid, keeps the worst error
//! with the parameters where it occurred and decides pass or fail.

mod check;
mod identities;
mod kernel_checks;
mod operator_checks;
mod report;
mod special;
mod suite;

pub use check::{CheckSpec, Comparison, ConvergenceMetric, Expectation, Grid, Pair, PairingMetric};
pub use identities::binomial_bound_sequence;
pub use operator_checks::{convergence_errors, norm_sequence, pairing_families, pairing_limit, unit_mode_family};
pub use report::{run_check, run_suite, run_suite_with, CheckRecord, RunOptions, VerificationReport};
pub use suite::{default_suite, identities_suite, quick_suite, suite_by_name, TolProfile, SUITE_NAMES};

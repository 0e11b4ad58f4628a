use super::check::{floor_of, CheckSpec, Comparison, Expectation, Grid, Worst};
use super::{identities, kernel_checks, operator_checks, special};
use crate::error::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::time::Instant;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub family: String,
    pub comparison: Comparison,
    pub tolerance: f64,
    /// Largest error or ratio over the grid; `null` when the run failed.
    pub worst_error: Option<f64>,
    pub worst_params: Value,
    pub evaluations: usize,
    pub expectation: Expectation,
    pub within_tolerance: bool,
    pub pass: bool,
    pub error: Option<String>,
    pub grid: Grid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

/// Records of a suite run in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// True when every check with a pass or fail expectation met it.
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite or null")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Adds wall-clock seconds to the report; off by default so reports are reproducible.
    pub include_wall_time: bool,
}

fn evaluate(grid: &Grid, floor: f64) -> Result<Worst> {
    use Grid::*;
    match grid {
        BinomialIdentity { d, n_max, betas, epsilons } => identities::binomial_identity(*d, *n_max, betas, epsilons, floor),
        BinomialBoundPlateau { d, n_max, betas, epsilons } => {
            identities::binomial_bound_plateau(*d, *n_max, betas, epsilons)
        }
        BinomialBoundExplicit { d, n_max, betas, epsilons } => {
            identities::binomial_bound_explicit(*d, *n_max, betas, epsilons)
        }
        Mehler { dims, ws, radii, cosines, terms } => identities::mehler(dims, ws, radii, cosines, *terms, floor),
        MehlerDiagonal { dims, ws, radii } => identities::mehler_diagonal(dims, ws, radii, floor),
        UltraBessel { m_max, lambdas, zs } => special::ultra_bessel(*m_max, lambdas, zs, floor),
        QBessel { m_max, alphas, betas, epsilons, zs } => special::q_bessel(*m_max, alphas, betas, epsilons, zs, floor),
        QCollapse { m_max, alphas, cosines } => special::q_collapse(*m_max, alphas, cosines, floor),
        QUniformBound { m_max, alphas, betas, epsilons, fit_cosines, check_cosines } => {
            special::q_uniform_bound(*m_max, alphas, betas, epsilons, fit_cosines, check_cosines)
        }
        LaguerreGenerating { m_max, alphas, ws, radii, terms } => {
            special::laguerre_generating(*m_max, alphas, ws, radii, *terms, floor)
        }
        KernelEquivalence { d, n_max, m_max, gammas, delta_offset, radii, constant_scale } => {
            kernel_checks::kernel_equivalence(*d, *n_max, *m_max, gammas, *delta_offset, radii, *constant_scale, floor)
        }
        KernelZero { d, n_max, gamma, delta_offset, radii } => {
            kernel_checks::kernel_zero(*d, *n_max, *gamma, *delta_offset, radii)
        }
        ComplexExpansion { d, n_max, m_max, betas, epsilon, p, radii, half_shifts } => {
            kernel_checks::complex_expansion(*d, *n_max, *m_max, betas, *epsilon, *p, radii, half_shifts, floor)
        }
        CesaroDecomposition { d, n_max, beta, epsilon, points } => {
            kernel_checks::cesaro_decomposition(*d, *n_max, *beta, *epsilon, points, floor)
        }
        EigenRelation { d, gamma, delta_offset, n_max, m_max, j_max } => {
            operator_checks::eigen_relation(*d, *gamma, *delta_offset, *n_max, *m_max, *j_max, floor)
        }
        NormPlateau { d, gamma, delta_offset, ps, m_max, n_max, per_degree } => {
            operator_checks::norm_plateau(*d, *gamma, *delta_offset, ps, *m_max, *n_max, *per_degree)
        }
        NormQuadrature { d, gamma, delta_offset, n_max, m_max } => {
            operator_checks::norm_quadrature(*d, *gamma, *delta_offset, *n_max, *m_max)
        }
        Convergence { d, gamma, delta_offset, p, modes, n_max, metric } => {
            operator_checks::convergence(*d, *gamma, *delta_offset, *p, modes, *n_max, *metric)
        }
        Pairing { d, gammas, epsilon, p, n_max, metric } => {
            operator_checks::pairing_probe(*d, gammas, *epsilon, *p, *n_max, *metric)
        }
    }
}

/// Runs one check; computation errors are captured in the record.
pub fn run_check(spec: &CheckSpec, opts: &RunOptions) -> CheckRecord {
    let start = Instant::now();
    let outcome = evaluate(&spec.grid, floor_of(spec.comparison));
    let elapsed = start.elapsed().as_secs_f64();
    let (worst_error, worst_params, evaluations, error) = match outcome {
        Ok(w) => (Some(w.error), w.params, w.evaluations, None),
        Err(e) => (None, Value::Null, 0, Some(e.to_string())),
    };
    let within_tolerance = worst_error.is_some_and(|e| e <= spec.tolerance);
    let pass = match spec.expectation {
        Expectation::Pass => within_tolerance,
        Expectation::Fail => error.is_none() && !within_tolerance,
        Expectation::Exploratory => true,
    };
    CheckRecord {
        name: spec.name.clone(),
        family: spec.grid.family().to_string(),
        comparison: spec.comparison,
        tolerance: spec.tolerance,
        worst_error: worst_error.filter(|e| e.is_finite()),
        worst_params,
        evaluations,
        expectation: spec.expectation,
        within_tolerance,
        pass,
        error,
        grid: spec.grid.clone(),
        wall_time_s: opts.include_wall_time.then_some(elapsed),
    }
}

/// Runs every check with default options.
pub fn run_suite(checks: &[CheckSpec]) -> VerificationReport {
    run_suite_with(checks, &RunOptions::default(), |_| {})
}

/// Runs checks in parallel, calling `on_done` as each finishes; records keep input order.
pub fn run_suite_with<F>(checks: &[CheckSpec], opts: &RunOptions, on_done: F) -> VerificationReport
where
    F: Fn(&CheckRecord) + Sync,
{
    let start = Instant::now();
    let records: Vec<CheckRecord> = checks
        .par_iter()
        .map(|spec| {
            let rec = run_check(spec, opts);
            on_done(&rec);
            rec
        })
        .collect();
    VerificationReport {
        pass: records.iter().all(|r| r.pass),
        checks: records,
        wall_time_s: opts.include_wall_time.then(|| start.elapsed().as_secs_f64()),
    }
}

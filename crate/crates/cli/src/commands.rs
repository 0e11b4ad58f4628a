//! Subcommand bodies: evaluate in parallel, then write once.

use crate::config::{ConvergeConfig, KernelConfig, NormsConfig, PairingConfig, VerifyConfig};
use crate::output::{fmt_real, CsvOut, Progress};
use crate::CliError;
use dunkl_cesaro::kernels::{complex_kernel, funk_hecke_kernel, k_laguerre, ComplexKernelParams, FunkHeckeVariant, KernelForm};
use dunkl_cesaro::operators::{
    default_radial_rule, operator_norm, operator_norm_with, NormMethod, NormOptions, OperatorNorm,
};
use dunkl_cesaro::specfun::critical_index;
use dunkl_cesaro::verify::{convergence_errors, pairing_families, run_suite_with, suite_by_name, RunOptions, TolProfile};
use dunkl_cesaro::{operators::pairing, ComplexScalar, Result as CoreResult};
use rayon::prelude::*;
use std::io::Write;
use std::path::Path;

fn resolve_delta(delta: Option<f64>, offset: f64, d: usize, gamma: f64) -> f64 {
    delta.unwrap_or(critical_index(d, gamma) + offset)
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Returns whether the suite met every expectation.
pub fn verify(cfg: &VerifyConfig) -> Result<bool, CliError> {
    let profile = TolProfile::parse(&cfg.tol_profile).map_err(|e| CliError::Usage(e.to_string()))?;
    let checks = suite_by_name(&cfg.suite, profile).map_err(|e| CliError::Usage(e.to_string()))?;
    let progress = Progress::new("verify", checks.len(), "checks");
    let opts = RunOptions { include_wall_time: cfg.wall_time };
    let report = run_suite_with(&checks, &opts, |rec| {
        let worst = rec.worst_error.map_or("n/a".to_string(), |e| format!("{e:.3e}"));
        let status = if rec.pass { "ok" } else { "FAILED" };
        progress.note(&format!("{} {status} (worst {worst}, tolerance {:.3e})", rec.name, rec.tolerance));
    });
    let mut text = report.to_json();
    text.push('\n');
    write_text(cfg.out.as_deref(), &text)?;
    eprintln!("verify: suite '{}' {}", cfg.suite, if report.pass { "passed" } else { "failed" });
    Ok(report.pass)
}

pub fn kernel(cfg: &KernelConfig) -> Result<(), CliError> {
    let form: KernelForm = cfg.form.parse().map_err(CliError::Usage)?;
    let delta = resolve_delta(cfg.delta, cfg.delta_offset, cfg.d, cfg.gamma);
    let rs = &cfg.r.0;
    let ss = cfg.s.as_ref().map_or(rs, |s| &s.0);
    let points: Vec<(f64, f64)> = rs.iter().flat_map(|&r| ss.iter().map(move |&s| (r, s))).collect();
    let progress = Progress::new("kernel", points.len(), "grid points");
    let eval = |r: f64, s: f64| -> CoreResult<ComplexScalar> {
        let real = |v: f64| ComplexScalar::new(v, 0.0);
        match form {
            KernelForm::LaguerreSum => k_laguerre(cfg.n, cfg.m, real(delta), real(cfg.gamma), cfg.d, r, s),
            KernelForm::FunkHeckeD => {
                funk_hecke_kernel(cfg.n, cfg.m, delta, cfg.gamma, cfg.d, FunkHeckeVariant::D, r, s).map(real)
            }
            KernelForm::FunkHeckeDPlus1 => {
                funk_hecke_kernel(cfg.n, cfg.m, delta, cfg.gamma, cfg.d, FunkHeckeVariant::DPlus1, r, s).map(real)
            }
            KernelForm::ComplexExtended => {
                let params = ComplexKernelParams {
                    n: cfg.n,
                    m: cfg.m,
                    epsilon: cfg.epsilon,
                    beta: cfg.beta,
                    half_shift: cfg.half_shift,
                    p: cfg.p,
                    d: cfg.d,
                };
                complex_kernel(params, r, s)
            }
        }
    };
    let values = points
        .par_iter()
        .map(|&(r, s)| {
            let v = eval(r, s);
            progress.tick();
            v
        })
        .collect::<CoreResult<Vec<_>>>()?;
    let mut out = CsvOut::open(cfg.out.as_deref(), &["r", "s", "form", "re", "im"])?;
    for (&(r, s), v) in points.iter().zip(&values) {
        out.row(&[fmt_real(r), fmt_real(s), form.name().to_string(), fmt_real(v.re), fmt_real(v.im)])?;
    }
    out.finish()
}

pub fn norms(cfg: &NormsConfig) -> Result<(), CliError> {
    let delta = resolve_delta(cfg.delta, cfg.delta_offset, cfg.d, cfg.gamma);
    let opts = NormOptions {
        seed: cfg.seed,
        random_trials: cfg.random_trials,
        refine: cfg.refine,
        power_iterations: cfg.power_iterations,
    };
    let mut jobs = Vec::new();
    for n in cfg.n.iter() {
        for m in cfg.m.iter() {
            for &p in &cfg.p.0 {
                jobs.push((n, m, p));
            }
        }
    }
    let progress = Progress::new("norms", jobs.len(), "grid points");
    let values = jobs
        .par_iter()
        .map(|&(n, m, p)| {
            let v = if p == 2.0 {
                operator_norm(n, m, delta, cfg.gamma, cfg.d, p)
            } else {
                default_radial_rule(n, cfg.d, cfg.gamma).and_then(|rule| operator_norm_with(n, m, delta, p, &rule, opts))
            };
            progress.tick();
            v
        })
        .collect::<CoreResult<Vec<OperatorNorm>>>()?;
    let mut out = CsvOut::open(cfg.out.as_deref(), &["N", "m", "p", "delta", "gamma", "norm", "method"])?;
    for (&(n, m, p), v) in jobs.iter().zip(&values) {
        let method: NormMethod = v.method;
        out.row(&[
            n.to_string(),
            m.to_string(),
            fmt_real(p),
            fmt_real(delta),
            fmt_real(cfg.gamma),
            fmt_real(v.value),
            method.name().to_string(),
        ])?;
    }
    out.finish()
}

pub fn converge(cfg: &ConvergeConfig) -> Result<(), CliError> {
    let delta = resolve_delta(cfg.delta, cfg.delta_offset, cfg.d, cfg.gamma);
    eprintln!("converge: N up to {}", cfg.n.end);
    let errors = convergence_errors(cfg.d, cfg.gamma, delta, cfg.p, &cfg.modes.0, cfg.n.end)?;
    let mut out = CsvOut::open(cfg.out.as_deref(), &["N", "error"])?;
    for (n, e) in errors.into_iter().filter(|(n, _)| *n >= cfg.n.start) {
        out.row(&[n.to_string(), fmt_real(e)])?;
    }
    out.finish()
}

/// Real parts probed: both strip edges and the midline.
const STRIP_REAL_PARTS: [f64; 3] = [0.0, 0.25, 0.5];

pub fn pairing_sweep(cfg: &PairingConfig) -> Result<(), CliError> {
    let rule = default_radial_rule(cfg.n.end, cfg.d, cfg.gamma)?;
    let (f, g) = pairing_families(rule, cfg.p)?;
    let mut jobs = Vec::new();
    for n in cfg.n.iter() {
        for &x in &STRIP_REAL_PARTS {
            for &beta in &cfg.betas.0 {
                jobs.push((n, ComplexScalar::new(x, beta)));
            }
        }
    }
    let progress = Progress::new("pairing", jobs.len(), "grid points");
    let values = jobs
        .par_iter()
        .map(|&(n, zeta)| {
            let v = pairing(n, cfg.epsilon, zeta, cfg.p, &f, &g);
            progress.tick();
            v
        })
        .collect::<CoreResult<Vec<_>>>()?;
    let mut out = CsvOut::open(cfg.out.as_deref(), &["N", "zeta_re", "zeta_im", "re", "im", "dual_bound"])?;
    for (&(n, zeta), v) in jobs.iter().zip(&values) {
        out.row(&[
            n.to_string(),
            fmt_real(zeta.re),
            fmt_real(zeta.im),
            fmt_real(v.value.re),
            fmt_real(v.value.im),
            fmt_real(v.dual_bound),
        ])?;
    }
    out.finish()
}

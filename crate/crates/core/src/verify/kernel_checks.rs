use super::check::{scaled_error, Worst};
use crate::error::Result;
use crate::kernels::{
    cesaro_from_projections, complex_kernel, complex_kernel_expansion, funk_hecke_kernel_with, k_laguerre,
    ComplexKernelParams, ExpansionQuadrature, FunkHeckeOptions, FunkHeckeVariant, KernelPoint, ProjectionKernel,
};
use crate::specfun::{cesaro_coeffs, critical_index, ComplexScalar};
use rayon::prelude::*;
use serde_json::json;

fn re(x: f64) -> ComplexScalar {
    ComplexScalar::new(x, 0.0)
}

fn radius_pairs(radii: &[f64]) -> Vec<(f64, f64)> {
    radii.iter().flat_map(|&r| radii.iter().map(move |&s| (r, s))).collect()
}

/// Variants whose preconditions hold at `γ`.
fn variants_for(gamma: f64) -> Vec<FunkHeckeVariant> {
    let mut v = Vec::new();
    if gamma > 0.0 {
        v.push(FunkHeckeVariant::D);
    }
    if gamma > 0.5 {
        v.push(FunkHeckeVariant::DPlus1);
    }
    v
}

pub(crate) fn kernel_equivalence(
    d: usize,
    n_max: usize,
    m_max: usize,
    gammas: &[f64],
    delta_offset: f64,
    radii: &[f64],
    constant_scale: f64,
    floor: f64,
) -> Result<Worst> {
    let opts = FunkHeckeOptions {
        constant_scale,
        ..FunkHeckeOptions::default()
    };
    let mut jobs = Vec::new();
    for &g in gammas {
        for n in 0..=n_max {
            for m in 0..=m_max.min(n) {
                jobs.push((g, n, m));
            }
        }
    }
    let parts = jobs
        .into_par_iter()
        .map(|(gamma, n, m)| {
            let delta = critical_index(d, gamma) + delta_offset;
            let mut w = Worst::new();
            for (r, s) in radius_pairs(radii) {
                let lag = k_laguerre(n, m, re(delta), re(gamma), d, r, s)?;
                for variant in variants_for(gamma) {
                    let fh = funk_hecke_kernel_with(opts, n, m, delta, gamma, d, variant, r, s)?;
                    w.record(scaled_error(re(fh), lag, floor), || {
                        json!({"N": n, "m": m, "gamma": gamma, "delta": delta, "r": r, "s": s, "form": variant})
                    });
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

pub(crate) fn kernel_zero(d: usize, n_max: usize, gamma: f64, delta_offset: f64, radii: &[f64]) -> Result<Worst> {
    let delta = critical_index(d, gamma) + delta_offset;
    let mut jobs = Vec::new();
    for n in 0..n_max {
        for m in n + 1..=n_max {
            jobs.push((n, m));
        }
    }
    let parts = jobs
        .into_par_iter()
        .map(|(n, m)| {
            let mut w = Worst::new();
            for (r, s) in radius_pairs(radii) {
                let lag = k_laguerre(n, m, re(delta), re(gamma), d, r, s)?;
                let lag_err = if lag == re(0.0) { 0.0 } else { f64::INFINITY };
                w.record(lag_err, || json!({"N": n, "m": m, "r": r, "s": s, "form": "laguerre_sum"}));
                for variant in variants_for(gamma) {
                    let fh = funk_hecke_kernel_with(FunkHeckeOptions::default(), n, m, delta, gamma, d, variant, r, s)?;
                    w.record(fh.abs(), || json!({"N": n, "m": m, "r": r, "s": s, "form": variant}));
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

pub(crate) fn complex_expansion(
    d: usize,
    n_max: usize,
    m_max: usize,
    betas: &[f64],
    epsilon: f64,
    p: f64,
    radii: &[f64],
    half_shifts: &[bool],
    floor: f64,
) -> Result<Worst> {
    let mut jobs = Vec::new();
    for &half_shift in half_shifts {
        for &beta in betas {
            for n in 0..=n_max {
                for m in 0..=m_max {
                    jobs.push(ComplexKernelParams { n, m, epsilon, beta, half_shift, p, d });
                }
            }
        }
    }
    let parts = jobs
        .into_par_iter()
        .map(|params| {
            let mut w = Worst::new();
            for (r, s) in radius_pairs(radii) {
                let lhs = complex_kernel(params, r, s)?;
                let rhs = complex_kernel_expansion(params, ExpansionQuadrature::Moments, r, s)?;
                w.record(scaled_error(rhs, lhs, floor), || {
                    json!({"N": params.n, "m": params.m, "beta": params.beta, "half_shift": params.half_shift, "r": r, "s": s})
                });
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

pub(crate) fn cesaro_decomposition(
    d: usize,
    n_max: usize,
    beta: f64,
    epsilon: f64,
    points: &[[f64; 3]],
    floor: f64,
) -> Result<Worst> {
    let half = (d as f64 - 1.0) / 2.0;
    let full = ComplexScalar::new(half + epsilon, beta);
    let real = re(half + epsilon / 2.0);
    let strip = cesaro_coeffs(n_max, ComplexScalar::new(epsilon / 2.0 - 1.0, beta))?;
    let a_real = cesaro_coeffs(n_max, real)?;
    let a_full = cesaro_coeffs(n_max, full)?;
    let proj = ProjectionKernel::new(d)?;
    let mut w = Worst::new();
    for &[r, s, u] in points {
        let phis = proj.table(n_max, KernelPoint::new(r, s, u))?;
        let sig_real: Vec<ComplexScalar> =
            (0..=n_max).map(|j| cesaro_from_projections(j, real, &phis)).collect::<Result<_>>()?;
        for n in 0..=n_max {
            let lhs = cesaro_from_projections(n, full, &phis)?;
            let rhs: ComplexScalar = (0..=n).map(|j| strip[n - j] * a_real[j] * sig_real[j]).sum::<ComplexScalar>() / a_full[n];
            w.record(scaled_error(rhs, lhs, floor), || json!({"N": n, "r": r, "s": s, "u": u}));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalence_small_grid_and_control() {
        let radii = [0.4, 1.5];
        let ok = kernel_equivalence(2, 6, 2, &[0.25, 0.6], 0.6, &radii, 1.0, 1.0).unwrap();
        assert!(ok.error < 1e-8, "{} at {}", ok.error, ok.params);
        let bad = kernel_equivalence(2, 6, 2, &[0.25], 0.6, &radii, 1.01, 1.0).unwrap();
        assert!(bad.error > 1e-4);
    }

    #[test]
    fn zero_below_order() {
        let w = kernel_zero(2, 4, 0.6, 0.6, &[0.5, 1.3]).unwrap();
        assert!(w.error < 1e-10, "{} at {}", w.error, w.params);
    }

    #[test]
    fn expansion_small_grid() {
        let w = complex_expansion(2, 5, 2, &[0.0, 0.5], 0.5, 4.0, &[0.5, 1.4], &[false, true], 1.0).unwrap();
        assert!(w.error < 1e-8, "{} at {}", w.error, w.params);
    }

    #[test]
    fn decomposition() {
        let w = cesaro_decomposition(2, 10, 0.5, 0.4, &[[0.3, 0.8, 0.1], [1.7, 0.9, -0.6]], 1.0).unwrap();
        assert!(w.error < 1e-12, "{} at {}", w.error, w.params);
    }
}

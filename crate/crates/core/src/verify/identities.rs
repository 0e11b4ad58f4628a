use super::check::{cx, scaled_error, Pair, Worst};
use crate::error::Result;
use crate::kernels::{mehler_closed_form, KernelPoint, ProjectionKernel};
use crate::specfun::{cesaro_coeffs, ComplexScalar};
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::PI;

fn grid_pairs(betas: &[f64], epsilons: &[f64]) -> Vec<(f64, f64)> {
    betas.iter().flat_map(|&b| epsilons.iter().map(move |&e| (b, e))).collect()
}

/// Coefficient tables `(A^{iβ+ε/2−1}, A^{δ(ε/2)}, A^{δ(iβ+ε)})` up to `n_max`.
fn tables(d: usize, n_max: usize, beta: f64, eps: f64) -> Result<[Vec<ComplexScalar>; 3]> {
    let half = (d as f64 - 1.0) / 2.0;
    Ok([
        cesaro_coeffs(n_max, ComplexScalar::new(eps / 2.0 - 1.0, beta))?,
        cesaro_coeffs(n_max, ComplexScalar::new(half + eps / 2.0, 0.0))?,
        cesaro_coeffs(n_max, ComplexScalar::new(half + eps, beta))?,
    ])
}

pub(crate) fn binomial_identity(d: usize, n_max: usize, betas: &[f64], epsilons: &[f64], floor: f64) -> Result<Worst> {
    let parts = grid_pairs(betas, epsilons)
        .into_par_iter()
        .map(|(beta, eps)| {
            let [a, b, target] = tables(d, n_max, beta, eps)?;
            let mut w = Worst::new();
            for n in 0..=n_max {
                let conv: ComplexScalar = (0..=n).map(|j| a[n - j] * b[j]).sum();
                w.record(scaled_error(conv, target[n], floor), || json!({"N": n, "beta": beta, "epsilon": eps}));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

/// `(1/|A_N^{δ(iβ+ε)}|) Σ_j |A_{N−j}^{iβ+ε/2−1}| A_j^{δ(ε/2)} / ((1+|β|) cosh πβ)` for `N ≤ n_max`.
pub fn binomial_bound_sequence(d: usize, n_max: usize, beta: f64, eps: f64) -> Result<Vec<f64>> {
    let [a, b, target] = tables(d, n_max, beta, eps)?;
    let norm = (1.0 + beta.abs()) * (PI * beta).cosh();
    Ok((0..=n_max)
        .map(|n| {
            let s: f64 = (0..=n).map(|j| a[n - j].norm() * b[j].norm()).sum();
            s / target[n].norm() / norm
        })
        .collect())
}

pub(crate) fn binomial_bound_plateau(d: usize, n_max: usize, betas: &[f64], epsilons: &[f64]) -> Result<Worst> {
    let parts = grid_pairs(betas, epsilons)
        .into_par_iter()
        .map(|(beta, eps)| {
            let seq = binomial_bound_sequence(d, n_max, beta, eps)?;
            let split = n_max / 2;
            let early = seq[..=split].iter().cloned().fold(0.0, f64::max);
            let late = seq[split + 1..].iter().cloned().fold(0.0, f64::max);
            let mut w = Worst::new();
            w.record(late / early, || {
                json!({"beta": beta, "epsilon": eps, "early_max": early, "late_max": late})
            });
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

pub(crate) fn binomial_bound_explicit(d: usize, n_max: usize, betas: &[f64], epsilons: &[f64]) -> Result<Worst> {
    let parts = grid_pairs(betas, epsilons)
        .into_par_iter()
        .map(|(beta, eps)| {
            let seq = binomial_bound_sequence(d, n_max, beta, eps)?;
            let mut w = Worst::new();
            for (n, v) in seq.iter().enumerate() {
                w.record(v * eps / 2.0, || json!({"N": n, "beta": beta, "epsilon": eps}));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

fn points(radii: &[f64], cosines: &[f64]) -> Vec<KernelPoint> {
    let mut out = Vec::new();
    for &r in radii {
        for &s in radii {
            for &u in cosines {
                out.push(KernelPoint::new(r, s, u));
            }
        }
    }
    out
}

pub(crate) fn mehler(
    dims: &[usize],
    ws: &[Pair],
    radii: &[f64],
    cosines: &[f64],
    terms: usize,
    floor: f64,
) -> Result<Worst> {
    let mut parts = Vec::new();
    for &d in dims {
        let proj = ProjectionKernel::new(d)?.with_max_degree(terms);
        let chunk = points(radii, cosines)
            .into_par_iter()
            .map(|pt| {
                let phis = proj.table(terms, pt)?;
                let mut w = Worst::new();
                for &wp in ws {
                    let z = cx(wp);
                    let series = phis.iter().rev().fold(ComplexScalar::new(0.0, 0.0), |acc, &p| acc * z + p);
                    let closed = mehler_closed_form(d, z, pt);
                    w.record(scaled_error(series, closed, floor), || {
                        json!({"d": d, "w": wp, "r": pt.r, "s": pt.s, "u": pt.u})
                    });
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        parts.extend(chunk);
    }
    Ok(Worst::merge_all(parts))
}

pub(crate) fn mehler_diagonal(dims: &[usize], ws: &[Pair], radii: &[f64], floor: f64) -> Result<Worst> {
    let mut w = Worst::new();
    for &d in dims {
        for &wp in ws {
            let z = cx(wp);
            for &r in radii {
                let general = mehler_closed_form(d, z, KernelPoint::new(r, r, 1.0));
                let one = ComplexScalar::new(1.0, 0.0);
                let special = (one - z * z).powf(-(d as f64) / 2.0)
                    * PI.powf(-(d as f64) / 2.0)
                    * (-(one - z) / (one + z) * (r * r)).exp();
                w.record(scaled_error(general, special, floor), || json!({"d": d, "w": wp, "r": r}));
            }
        }
    }
    Ok(w)
}

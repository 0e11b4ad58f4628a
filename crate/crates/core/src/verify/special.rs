use super::check::{cx, scaled_error, Pair, Worst};
use crate::error::Result;
use crate::quadrature::{gauss_jacobi_cached, integrate_endpoint_singular, EndpointPoint, GradedOptions};
use crate::specfun::{bessel_i_reduced, gamma, rgamma, ComplexScalar, LaguerreBasis, QFunction, Ultraspherical};
use rayon::prelude::*;
use serde_json::json;
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

fn re(x: f64) -> ComplexScalar {
    ComplexScalar::new(x, 0.0)
}

pub(crate) fn ultra_bessel(m_max: usize, lambdas: &[f64], zs: &[Pair], floor: f64) -> Result<Worst> {
    let jobs: Vec<(usize, f64)> = (0..=m_max).flat_map(|m| lambdas.iter().map(move |&l| (m, l))).collect();
    let parts = jobs
        .into_par_iter()
        .map(|(m, lambda)| {
            let rule = gauss_jacobi_cached(m + 40, lambda - 0.5, lambda - 0.5)?;
            let poly = Ultraspherical::new(m, re(lambda))?;
            let pvals: Vec<ComplexScalar> = rule.nodes().iter().map(|&u| poly.eval(u)).collect();
            let scale = gamma(re(lambda + 0.5))? * PI.sqrt();
            let mut w = Worst::new();
            for &zp in zs {
                let z = cx(zp);
                let lhs: ComplexScalar = rule
                    .nodes()
                    .iter()
                    .zip(rule.weights())
                    .zip(&pvals)
                    .map(|((&u, &wt), p)| (z * u).exp() * p * wt)
                    .sum();
                let rhs = scale * (z / 2.0).powu(m as u32) * bessel_i_reduced(re(lambda + m as f64), z);
                w.record(scaled_error(lhs, rhs, floor), || json!({"m": m, "lambda": lambda, "z": zp}));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

/// `∫_{−1}^{1} e^{zu} Q(u) du` for several `z`, sampling `Q` once per node.
fn q_moments(q: &QFunction, zs: &[ComplexScalar]) -> Vec<ComplexScalar> {
    let cache: RefCell<HashMap<u64, ComplexScalar>> = RefCell::new(HashMap::new());
    let value = |x: f64| *cache.borrow_mut().entry(x.to_bits()).or_insert_with(|| q.eval(x));
    let zero = re(0.0);
    zs.iter()
        .map(|&z| {
            let f = |pt: EndpointPoint| (z * pt.x).exp() * value(pt.x);
            integrate_endpoint_singular(-1.0, 1.0, zero, zero, f, GradedOptions::default())
        })
        .collect()
}

pub(crate) fn q_bessel(
    m_max: usize,
    alphas: &[f64],
    betas: &[f64],
    epsilons: &[f64],
    zs: &[Pair],
    floor: f64,
) -> Result<Worst> {
    let mut jobs = Vec::new();
    for m in 0..=m_max {
        for &a in alphas {
            for &b in betas {
                for &e in epsilons {
                    jobs.push((m, a, b, e));
                }
            }
        }
    }
    let zc: Vec<ComplexScalar> = zs.iter().map(|&p| cx(p)).collect();
    let parts = jobs
        .into_par_iter()
        .map(|(m, alpha, beta, eps)| {
            let q = QFunction::new(m, alpha, beta, eps)?;
            let lhs = q_moments(&q, &zc);
            let scale = gamma(re(alpha + 0.5))? * (PI.sqrt() / 2.0);
            let order = ComplexScalar::new(alpha + m as f64 + eps, beta);
            let mut w = Worst::new();
            for ((&zp, &z), l) in zs.iter().zip(&zc).zip(lhs) {
                let rhs = scale * (z / 2.0).powu(m as u32) * bessel_i_reduced(order, z);
                w.record(scaled_error(l, rhs, floor), || {
                    json!({"m": m, "alpha": alpha, "beta": beta, "epsilon": eps, "z": zp})
                });
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

pub(crate) fn q_collapse(m_max: usize, alphas: &[f64], cosines: &[f64], floor: f64) -> Result<Worst> {
    let jobs: Vec<(usize, f64)> = (0..=m_max).flat_map(|m| alphas.iter().map(move |&a| (m, a))).collect();
    let parts = jobs
        .into_par_iter()
        .map(|(m, alpha)| {
            let q = QFunction::new(m, alpha, 0.0, 0.0)?;
            let poly = Ultraspherical::new(m, re(alpha))?;
            let mut w = Worst::new();
            for &u in cosines {
                let expect = poly.eval(u) * (0.5 * (1.0 - u * u).powf(alpha - 0.5));
                w.record(scaled_error(q.eval(u), expect, floor), || json!({"m": m, "alpha": alpha, "u": u}));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

/// `|Q(u)| |Γ(1+iβ)| / (1−u²)^{α−1/2}`.
fn bound_ratio(q: &QFunction, alpha: f64, beta: f64, u: f64) -> f64 {
    let g = 1.0 / rgamma(ComplexScalar::new(1.0, beta)).norm();
    q.eval(u).norm() * g / (1.0 - u * u).powf(alpha - 0.5)
}

pub(crate) fn q_uniform_bound(
    m_max: usize,
    alphas: &[f64],
    betas: &[f64],
    epsilons: &[f64],
    fit: &[f64],
    check: &[f64],
) -> Result<Worst> {
    let mut pairs = Vec::new();
    for &a in alphas {
        for &b in betas {
            pairs.push((a, b));
        }
    }
    let parts = pairs
        .into_par_iter()
        .map(|(alpha, beta)| {
            let qs = (0..=m_max)
                .flat_map(|m| epsilons.iter().map(move |&e| (m, e)))
                .map(|(m, e)| Ok((m, e, QFunction::new(m, alpha, beta, e)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut fitted = 0.0f64;
            for (_, _, q) in &qs {
                for &u in fit {
                    fitted = fitted.max(bound_ratio(q, alpha, beta, u));
                }
            }
            let mut w = Worst::new();
            for (m, e, q) in &qs {
                for &u in check {
                    let r = bound_ratio(q, alpha, beta, u);
                    w.record(r / fitted, || {
                        json!({"m": m, "alpha": alpha, "beta": beta, "epsilon": e, "u": u, "fitted_constant": fitted})
                    });
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

pub(crate) fn laguerre_generating(
    m_max: usize,
    alphas: &[f64],
    ws: &[Pair],
    radii: &[f64],
    terms: usize,
    floor: f64,
) -> Result<Worst> {
    let jobs: Vec<(usize, f64)> = (0..=m_max).flat_map(|m| alphas.iter().map(move |&a| (m, a))).collect();
    let parts = jobs
        .into_par_iter()
        .map(|(m, alpha)| {
            let order = re(alpha + m as f64);
            let basis = LaguerreBasis::new(terms, order)?;
            let tables: Vec<Vec<ComplexScalar>> = radii.iter().map(|&r| basis.table(r)).collect();
            let one = re(1.0);
            let mut w = Worst::new();
            for (i, &r) in radii.iter().enumerate() {
                for (k, &s) in radii.iter().enumerate() {
                    let rsm = (r * s).powi(m as i32);
                    for &wp in ws {
                        let z = cx(wp);
                        let z2 = z * z;
                        let series = tables[i]
                            .iter()
                            .zip(&tables[k])
                            .rev()
                            .fold(re(0.0), |acc, (a, b)| acc * z2 + a * b)
                            * z.powu(m as u32)
                            * rsm;
                        let x = z * (2.0 * r * s) / (one - z2);
                        // (rsw)^{−α} I_{α+m}(x) = (rsw)^m (1−w²)^{−(α+m)} · I_{α+m}(x)/(x/2)^{α+m}
                        let closed = (one - z2).inv() * 2.0
                            * (-(one + z2) / (one - z2) * (0.5 * (r * r + s * s))).exp()
                            * (z * (r * s)).powu(m as u32)
                            * (one - z2).powc(-order)
                            * bessel_i_reduced(order, x);
                        w.record(scaled_error(series, closed, floor), || {
                            json!({"m": m, "alpha": alpha, "w": wp, "r": r, "s": s})
                        });
                    }
                }
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

use super::check::{scaled_error, ConvergenceMetric, PairingMetric, Worst};
use crate::error::Result;
use crate::operators::{
    apply_t, default_radial_rule, discrete_l2_norm, l2_norm_exact, laguerre_mode, mixed_norm, operator_norm, pairing,
    plateau_ratio, vector_apply, CoefficientFamily, RadialSamples,
};
use crate::quadrature::QuadratureRule;
use crate::specfun::{cesaro_coeffs, critical_index, ComplexScalar};
use rayon::prelude::*;
use serde_json::json;
use std::sync::Arc;

fn re(x: f64) -> ComplexScalar {
    ComplexScalar::new(x, 0.0)
}

pub(crate) fn eigen_relation(
    d: usize,
    gamma: f64,
    delta_offset: f64,
    n_max: usize,
    m_max: usize,
    j_max: usize,
    floor: f64,
) -> Result<Worst> {
    let delta = critical_index(d, gamma) + delta_offset;
    let rule = default_radial_rule(n_max, d, gamma)?;
    let modes = (0..=m_max)
        .flat_map(|m| (0..=j_max).map(move |k| (m, k)))
        .map(|(m, k)| Ok(((m, k), laguerre_mode(rule.clone(), m, k)?)))
        .collect::<Result<Vec<_>>>()?;
    let a = cesaro_coeffs(n_max, re(delta))?;
    let parts = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut w = Worst::new();
            for ((m, k), f) in modes.iter().filter(|((m, k), _)| m + 2 * k <= n) {
                let c = a[n - m - 2 * k] / a[n];
                let tf = apply_t(n, *m, delta, gamma, d, f)?;
                let err = tf
                    .values()
                    .iter()
                    .zip(f.values())
                    .map(|(x, y)| scaled_error(*x, y * c, floor))
                    .fold(0.0, f64::max);
                w.record(err, || json!({"N": n, "m": m, "j": k, "delta": delta}));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

/// `values[N] = ‖T_{N,m}‖_p` for `N ≤ n_max`.
pub fn norm_sequence(d: usize, gamma: f64, delta: f64, p: f64, m: usize, n_max: usize) -> Result<Vec<f64>> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| Ok(operator_norm(n, m, delta, gamma, d, p)?.value))
        .collect()
}

pub(crate) fn norm_plateau(
    d: usize,
    gamma: f64,
    delta_offset: f64,
    ps: &[f64],
    m_max: usize,
    n_max: usize,
    per_degree: bool,
) -> Result<Worst> {
    let delta = critical_index(d, gamma) + delta_offset;
    let mut w = Worst::new();
    for &p in ps {
        let seqs = (0..=m_max)
            .map(|m| norm_sequence(d, gamma, delta, p, m, n_max))
            .collect::<Result<Vec<_>>>()?;
        if per_degree {
            for (m, seq) in seqs.iter().enumerate() {
                w.record(plateau_ratio(seq), || json!({"p": p, "m": m, "delta": delta}));
            }
        } else {
            let envelope: Vec<f64> =
                (0..=n_max).map(|n| seqs.iter().map(|s| s[n]).fold(0.0, f64::max)).collect();
            w.record(plateau_ratio(&envelope), || json!({"p": p, "m_max": m_max, "delta": delta}));
        }
    }
    Ok(w)
}

pub(crate) fn norm_quadrature(d: usize, gamma: f64, delta_offset: f64, n_max: usize, m_max: usize) -> Result<Worst> {
    let delta = critical_index(d, gamma) + delta_offset;
    let parts = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let rule = default_radial_rule(n, d, gamma)?;
            let mut w = Worst::new();
            for m in 0..=m_max {
                let q = discrete_l2_norm(n, m, delta, &rule)?;
                let e = l2_norm_exact(n, m, delta)?;
                w.record((q - e).abs(), || json!({"N": n, "m": m, "quadrature": q, "exact": e}));
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Worst::merge_all(parts))
}

/// Family of `k = 0` Laguerre modes at the given `(m, j)` slots, scaled to unit mixed norm.
pub fn unit_mode_family(rule: Arc<QuadratureRule>, modes: &[(usize, usize)], p: f64) -> Result<CoefficientFamily> {
    let (d, gamma) = match rule.domain() {
        crate::quadrature::RuleDomain::Radial { d, gamma, .. } => (d, gamma),
        _ => unreachable!("radial rules only"),
    };
    let mut fam = CoefficientFamily::new(rule.clone())?;
    for &(m, j) in modes {
        fam.insert(m, j, laguerre_mode(rule.clone(), m, 0)?)?;
    }
    let norm = mixed_norm(&fam, p, d, gamma)?;
    Ok(fam.scaled(re(1.0 / norm)))
}

/// `E(N) = ‖vector_apply(N) − f‖` for `N` from the largest mode degree to `n_max`.
pub fn convergence_errors(
    d: usize,
    gamma: f64,
    delta: f64,
    p: f64,
    modes: &[(usize, usize)],
    n_max: usize,
) -> Result<Vec<(usize, f64)>> {
    let rule = default_radial_rule(n_max, d, gamma)?;
    let family = unit_mode_family(rule, modes, p)?;
    let start = modes.iter().map(|&(m, _)| m).max().unwrap_or(0);
    (start..=n_max)
        .into_par_iter()
        .map(|n| {
            let diff = vector_apply(n, delta, gamma, d, &family)?.sub(&family)?;
            Ok((n, mixed_norm(&diff, p, d, gamma)?))
        })
        .collect()
}

pub(crate) fn convergence(
    d: usize,
    gamma: f64,
    delta_offset: f64,
    p: f64,
    modes: &[(usize, usize)],
    n_max: usize,
    metric: ConvergenceMetric,
) -> Result<Worst> {
    let delta = critical_index(d, gamma) + delta_offset;
    let mut w = Worst::new();
    match metric {
        ConvergenceMetric::Final => {
            let rule = default_radial_rule(n_max, d, gamma)?;
            let family = unit_mode_family(rule, modes, p)?;
            let diff = vector_apply(n_max, delta, gamma, d, &family)?.sub(&family)?;
            w.record(mixed_norm(&diff, p, d, gamma)?, || json!({"N": n_max, "delta": delta}));
        }
        ConvergenceMetric::Monotone => {
            let errs = convergence_errors(d, gamma, delta, p, modes, n_max)?;
            for pair in errs.windows(2) {
                let (n, e0) = pair[0];
                let e1 = pair[1].1;
                let ratio = if e0 == 0.0 { if e1 == 0.0 { 1.0 } else { f64::INFINITY } } else { e1 / e0 };
                w.record(ratio, || json!({"N": n, "error": e0, "next_error": e1}));
            }
        }
    }
    Ok(w)
}

/// Normalized test families for the pairing probe: `‖f‖_{p} = ‖g‖_{p′} = 1`.
pub fn pairing_families(rule: Arc<QuadratureRule>, p: f64) -> Result<(CoefficientFamily, CoefficientFamily)> {
    let (d, gamma) = match rule.domain() {
        crate::quadrature::RuleDomain::Radial { d, gamma, .. } => (d, gamma),
        _ => unreachable!("radial rules only"),
    };
    let real = |f: fn(f64) -> f64| RadialSamples::from_real_fn(rule.clone(), f);
    let f = CoefficientFamily::new(rule.clone())?
        .with(0, 1, real(|r| (-r * r / 2.0).exp())?)?
        .with(1, 1, real(|r| r * (1.0 + 0.5 * r) * (-r * r / 2.0).exp())?)?
        .with(2, 1, laguerre_mode(rule.clone(), 2, 1)?)?
        .with(3, 2, real(|r| r.powi(3) * (-0.4 * r * r).exp())?)?;
    let g = CoefficientFamily::new(rule.clone())?
        .with(0, 1, real(|r| (1.0 + r * r) * (-r * r / 2.0).exp())?)?
        .with(1, 1, real(|r| r * (-0.3 * r * r).exp())?)?
        .with(2, 1, laguerre_mode(rule.clone(), 2, 0)?)?
        .with(3, 2, real(|r| r.powi(3) * (-r * r / 2.0).exp())?)?;
    let p_conj = p / (p - 1.0);
    let fnorm = mixed_norm(&f, p, d, gamma)?;
    let gnorm = mixed_norm(&g, p_conj, d, gamma)?;
    Ok((f.scaled(re(1.0 / fnorm)), g.scaled(re(1.0 / gnorm))))
}

/// `Σ_{m,j} ∫ f_{m,j} conj(g_{m,j}) r^{d+2γ−1} dr`, the limit of `F_N(γ)`.
pub fn pairing_limit(f: &CoefficientFamily, g: &CoefficientFamily) -> ComplexScalar {
    let weights = f.rule().weights();
    f.iter()
        .filter_map(|(&(m, j), fm)| g.get(m, j).map(|gm| (fm, gm)))
        .map(|(fm, gm)| {
            fm.values()
                .iter()
                .zip(gm.values())
                .zip(weights)
                .map(|((a, b), w)| a * b.conj() * *w)
                .sum::<ComplexScalar>()
        })
        .sum()
}

pub(crate) fn pairing_probe(
    d: usize,
    gammas: &[f64],
    epsilon: f64,
    p: f64,
    n_max: usize,
    metric: PairingMetric,
) -> Result<Worst> {
    let mut w = Worst::new();
    for &gamma in gammas {
        let rule = default_radial_rule(n_max, d, gamma)?;
        let (f, g) = pairing_families(rule, p)?;
        let zeta = re(gamma);
        let values = (0..=n_max)
            .into_par_iter()
            .map(|n| pairing(n, epsilon, zeta, p, &f, &g))
            .collect::<Result<Vec<_>>>()?;
        match metric {
            PairingMetric::Plateau => {
                let split = n_max / 2;
                let limit = pairing_limit(&f, &g).norm();
                let early = values[..=split].iter().map(|v| v.value.norm()).fold(limit, f64::max);
                let late = values[split + 1..].iter().map(|v| v.value.norm()).fold(0.0, f64::max);
                w.record(late / early, || {
                    json!({"gamma": gamma, "late_max": late, "early_max_or_limit": early, "limit": limit})
                });
            }
            PairingMetric::Holder => {
                for (n, v) in values.iter().enumerate() {
                    w.record(v.value.norm() / v.dual_bound, || json!({"gamma": gamma, "N": n}));
                }
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_small() {
        let w = eigen_relation(2, 0.3, 0.5, 12, 3, 3, 1.0).unwrap();
        assert!(w.error < 1e-10, "{} at {}", w.error, w.params);
    }

    #[test]
    fn quadrature_norm_small() {
        let w = norm_quadrature(2, 0.3, 0.5, 12, 4).unwrap();
        assert!(w.error < 1e-10, "{} at {}", w.error, w.params);
    }

    #[test]
    fn exact_plateau_low_degrees() {
        let w = norm_plateau(2, 0.3, 0.5, &[2.0], 2, 40, true).unwrap();
        assert!(w.error < 1.1, "{}", w.error);
    }

    #[test]
    fn convergence_decreases() {
        let modes = [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)];
        let errs = convergence_errors(2, 0.3, 1.3, 2.0, &modes, 20).unwrap();
        assert!(errs.windows(2).all(|w| w[1].1 <= w[0].1));
        // T_{N,0} fixes the m = 0 mode, so only the m ≥ 1 entries contribute.
        assert!(errs[0].1 > 0.0);
    }

    #[test]
    fn pairing_families_are_normalized_and_bounded() {
        let rule = default_radial_rule(10, 2, 0.25).unwrap();
        let (f, g) = pairing_families(rule, 4.0).unwrap();
        assert!((mixed_norm(&f, 4.0, 2, 0.25).unwrap() - 1.0).abs() < 1e-14);
        assert!((mixed_norm(&g, 4.0 / 3.0, 2, 0.25).unwrap() - 1.0).abs() < 1e-14);
        assert!(pairing_limit(&f, &g).norm() <= 1.0);
        let h = pairing_probe(2, &[0.25], 0.5, 4.0, 10, PairingMetric::Holder).unwrap();
        assert!(h.error <= 1.0 + 1e-12);
    }
}

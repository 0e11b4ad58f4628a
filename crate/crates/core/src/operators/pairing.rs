use super::apply::ModeTable;
use super::samples::{radial_params, weighted_lp, CoefficientFamily};
use crate::error::{Error, Result};
use crate::kernels::{radial_power, LaguerreKernel};
use crate::specfun::ComplexScalar;
use rayon::prelude::*;
use std::sync::Arc;

/// `F_N(ζ)` together with the Hölder bound it must respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub value: ComplexScalar,
    /// `‖(Σ|𝒯 f̃|²)^{1/2}‖_{L^p(dr)} · ‖(Σ|g̃|²)^{1/2}‖_{L^{p′}(dr)}`.
    pub dual_bound: f64,
}

/// `F_N(ζ) = ∫_0^∞ Σ_{m,j} 𝒯_{N,m}^{ε,ζ} f̃_{m,j}(r) · conj(g̃_{m,j}(r)) dr`.
///
/// Callers pass the untilded families; the weights `r^{2δ(γ)/p}` and
/// `r^{2δ(γ)/p′}` are applied here, with `d` and `γ` read from the shared rule.
pub fn pairing_f(
    n: usize,
    epsilon: f64,
    zeta: ComplexScalar,
    p: f64,
    f: &CoefficientFamily,
    g: &CoefficientFamily,
) -> Result<ComplexScalar> {
    Ok(pairing(n, epsilon, zeta, p, f, g)?.value)
}

/// [`pairing_f`] plus its Hölder bound.
pub fn pairing(
    n: usize,
    epsilon: f64,
    zeta: ComplexScalar,
    p: f64,
    f: &CoefficientFamily,
    g: &CoefficientFamily,
) -> Result<Pairing> {
    if !(p > 2.0 && p.is_finite()) {
        return Err(Error::Domain(format!("pairing: p must lie in (2, ∞), got {p}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("pairing: epsilon must be positive, got {epsilon}")));
    }
    if !(zeta.re >= 0.0 && zeta.re <= 0.5) {
        return Err(Error::Domain(format!("pairing: Re ζ = {} is outside [0, 1/2]", zeta.re)));
    }
    let rule = f.rule();
    if !Arc::ptr_eq(rule, g.rule()) && **rule != **g.rule() {
        return Err(Error::Contract("pairing: families use different rules".into()));
    }
    let (d, gamma) = radial_params(rule)?;
    let p_conj = p / (p - 1.0);
    let nodes = rule.nodes();
    let weights = rule.weights();

    // With e = d + 2γ − 1 = 2δ(γ) and rule weights w = r^e dr, the plain
    // measure dr is w r^{−e}. The tilde weights combine with the kernel
    // weights so that only r^{2(ζ−γ)/p} and s^{2(ζ−γ)/p′} remain.
    let shift = (zeta - gamma) * 2.0;
    let left: Vec<ComplexScalar> = nodes.iter().map(|&r| radial_power(r, shift / p)).collect();
    let right: Vec<ComplexScalar> = nodes.iter().map(|&r| radial_power(r, shift / p_conj)).collect();
    let delta = zeta + (d as f64 - 1.0) / 2.0 + epsilon;

    let mut degrees: Vec<usize> = f.iter().map(|(&(m, _), _)| m).collect();
    degrees.dedup();
    let tables: Vec<(usize, ModeTable)> = degrees
        .into_par_iter()
        .map(|m| Ok((m, ModeTable::new(&LaguerreKernel::new(n, m, delta, zeta, d)?, nodes))))
        .collect::<Result<_>>()?;

    let zero = ComplexScalar::new(0.0, 0.0);
    let mut value = zero;
    // Σ_{m,j} |𝒯 f̃_{m,j}(r_i)|² on the plain-measure scale.
    let mut square = vec![0.0; nodes.len()];
    for (m, table) in &tables {
        for ((_, j), fm) in f.iter().filter(|((mm, _), _)| mm == m) {
            let shifted: Vec<ComplexScalar> = fm.values().iter().zip(&right).map(|(v, w)| v * w).collect();
            let out = table.apply(weights, &shifted);
            for (i, t) in out.iter().enumerate() {
                // r_i^{−e/p} 𝒯 f̃(r_i)
                let tf = t * left[i];
                square[i] += tf.norm_sqr();
                if let Some(gm) = g.get(*m, *j) {
                    value += tf * gm.values()[i].conj() * weights[i];
                }
            }
        }
    }
    // ‖·‖_{L^p(dr)} of r^{e/p} h equals ‖h‖_{L^p(r^e dr)}; likewise for g̃ with p′.
    let tf_norm = weighted_lp(weights, square.into_iter().map(f64::sqrt), p);
    let g_norm = if g.is_empty() {
        0.0
    } else {
        weighted_lp(weights, super::apply::square_function(g).into_iter(), p_conj)
    };
    Ok(Pairing {
        value,
        dual_bound: tf_norm * g_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{apply_t, default_radial_rule, laguerre_mode, mixed_norm, RadialSamples};
    use crate::kernels::{complex_kernel, ComplexKernelParams};

    const D: usize = 2;

    fn families(gamma: f64) -> (CoefficientFamily, CoefficientFamily) {
        let rule = default_radial_rule(16, D, gamma).unwrap();
        let f = CoefficientFamily::new(rule.clone())
            .unwrap()
            .with(0, 1, RadialSamples::from_real_fn(rule.clone(), |r| (-r * r / 2.0).exp()).unwrap())
            .unwrap()
            .with(1, 1, laguerre_mode(rule.clone(), 1, 1).unwrap())
            .unwrap();
        let g = CoefficientFamily::new(rule.clone())
            .unwrap()
            .with(0, 1, RadialSamples::from_real_fn(rule.clone(), |r| (1.0 + r) * (-r * r / 3.0).exp()).unwrap())
            .unwrap()
            .with(1, 1, RadialSamples::from_real_fn(rule, |r| r * (-r * r / 2.0).exp()).unwrap())
            .unwrap();
        (f, g)
    }

    #[test]
    fn zero_test_family_gives_zero() {
        let (f, g) = families(0.3);
        let g0 = g.scaled(ComplexScalar::new(0.0, 0.0));
        let v = pairing_f(10, 0.5, ComplexScalar::new(0.1, 0.7), 4.0, &f, &g0).unwrap();
        assert_eq!(v, ComplexScalar::new(0.0, 0.0));
    }

    #[test]
    fn real_point_is_weighted_inner_product_of_t() {
        let gamma = 0.3;
        let (f, g) = families(gamma);
        let (n, eps) = (12, 0.5);
        let delta = (D as f64 - 1.0) / 2.0 + gamma + eps;
        let weights = f.rule().weights();
        let mut expect = ComplexScalar::new(0.0, 0.0);
        for (&(m, j), fm) in f.iter() {
            let tf = apply_t(n, m, delta, gamma, D, fm).unwrap();
            let gm = g.get(m, j).unwrap();
            for i in 0..weights.len() {
                expect += tf.values()[i] * gm.values()[i].conj() * weights[i];
            }
        }
        let got = pairing_f(n, eps, ComplexScalar::new(gamma, 0.0), 4.0, &f, &g).unwrap();
        assert!((got - expect).norm() < 1e-13 * (1.0 + expect.norm()));
    }

    #[test]
    fn matches_direct_kernel_on_the_boundary() {
        // Brute-force double sum with the complex kernel itself, in the plain measure.
        let gamma = 0.3;
        let (f, g) = families(gamma);
        let (n, eps, beta, p) = (6usize, 0.5, 0.7, 4.0);
        let rule = f.rule();
        let e = D as f64 + 2.0 * gamma - 1.0;
        let p_conj = p / (p - 1.0);
        let (nodes, weights) = (rule.nodes(), rule.weights());
        let mut expect = ComplexScalar::new(0.0, 0.0);
        for (&(m, j), fm) in f.iter() {
            let params = ComplexKernelParams { n, m, epsilon: eps, beta, half_shift: false, p, d: D };
            let gm = g.get(m, j).unwrap();
            for (i, &r) in nodes.iter().enumerate() {
                let gt = gm.values()[i].conj() * r.powf(e / p_conj);
                for (q, &s) in nodes.iter().enumerate() {
                    let ft = fm.values()[q] * s.powf(e / p);
                    let k = complex_kernel(params, r, s).unwrap();
                    expect += k * ft * gt * weights[i] * weights[q] * r.powf(-e) * s.powf(-e);
                }
            }
        }
        let got = pairing_f(n, eps, ComplexScalar::new(0.0, beta), p, &f, &g).unwrap();
        assert!((got - expect).norm() < 1e-10 * (1.0 + expect.norm()), "{got} vs {expect}");
    }

    #[test]
    fn holder_bound_holds_on_the_strip() {
        let (f, g) = families(0.25);
        for zeta in [ComplexScalar::new(0.0, 1.0), ComplexScalar::new(0.25, 0.0), ComplexScalar::new(0.5, -0.4)] {
            for n in [0, 5, 14] {
                let pr = pairing(n, 0.4, zeta, 3.0, &f, &g).unwrap();
                assert!(pr.value.norm() <= pr.dual_bound * (1.0 + 1e-12), "ζ={zeta} N={n}");
            }
        }
    }

    #[test]
    fn dual_bound_at_real_point_uses_untilded_norms() {
        let gamma = 0.25;
        let (f, g) = families(gamma);
        let pr = pairing(30, 0.5, ComplexScalar::new(gamma, 0.0), 4.0, &f, &g).unwrap();
        let g_norm = mixed_norm(&g, 4.0 / 3.0, D, gamma).unwrap();
        let delta = (D as f64 - 1.0) / 2.0 + gamma + 0.5;
        let tf = crate::operators::vector_apply(30, delta, gamma, D, &f).unwrap();
        let tf_norm = mixed_norm(&tf, 4.0, D, gamma).unwrap();
        assert!((pr.dual_bound - tf_norm * g_norm).abs() < 1e-12 * pr.dual_bound);
    }

    #[test]
    fn preconditions() {
        let (f, g) = families(0.3);
        assert!(pairing_f(4, 0.5, ComplexScalar::new(0.2, 0.0), 2.0, &f, &g).is_err());
        assert!(pairing_f(4, 0.5, ComplexScalar::new(0.7, 0.0), 4.0, &f, &g).is_err());
        assert!(pairing_f(4, 0.0, ComplexScalar::new(0.2, 0.0), 4.0, &f, &g).is_err());
    }
}

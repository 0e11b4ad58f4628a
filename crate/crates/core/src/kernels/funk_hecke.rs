use super::{KernelPoint, ProjectionKernel};
use crate::error::{Error, Result};
use crate::quadrature::gauss_jacobi_cached;
use crate::specfun::{cesaro_coeffs, log_gamma, ComplexScalar, Ultraspherical};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Dimension of the Cesàro kernel integrated over the angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunkHeckeVariant {
    /// `d`-dimensional kernel with coefficients `A_j^{γ−1}`.
    D,
    /// `(d+1)`-dimensional kernel with coefficients `A_j^{γ−3/2}`.
    DPlus1,
}

/// Knobs for [`funk_hecke_kernel_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunkHeckeOptions {
    /// Multiplies the leading constant; 1 except in negative controls.
    pub constant_scale: f64,
    /// Jacobi points beyond `N + m`.
    pub extra_nodes: usize,
}

impl Default for FunkHeckeOptions {
    fn default() -> Self {
        Self {
            constant_scale: 1.0,
            extra_nodes: 32,
        }
    }
}

/// Leading constant: `2π^{(d−1)/2}/Γ(λ+1/2)` for [`FunkHeckeVariant::D`] and
/// `2π^{d/2}/Γ(λ+1/2)` for [`FunkHeckeVariant::DPlus1`], with `λ = d/2 + γ − 1`.
pub fn funk_hecke_constant(d: usize, gamma: f64, variant: FunkHeckeVariant) -> Result<f64> {
    let lambda = d as f64 / 2.0 + gamma - 1.0;
    let power = match variant {
        FunkHeckeVariant::D => (d as f64 - 1.0) / 2.0,
        FunkHeckeVariant::DPlus1 => d as f64 / 2.0,
    };
    let lg = log_gamma(ComplexScalar::new(lambda + 0.5, 0.0))?.re;
    Ok(2.0 * (power * PI.ln() - lg).exp())
}

/// `K_{N,m}^{δ,γ}(r, s)` as an angular integral of Cesàro kernels against
/// `P_m^λ(u)(1−u²)^{λ−1/2}`.
pub fn funk_hecke_kernel(
    n: usize,
    m: usize,
    delta: f64,
    gamma: f64,
    d: usize,
    variant: FunkHeckeVariant,
    r: f64,
    s: f64,
) -> Result<f64> {
    funk_hecke_kernel_with(FunkHeckeOptions::default(), n, m, delta, gamma, d, variant, r, s)
}

/// [`funk_hecke_kernel`] with explicit options.
///
/// # Errors
/// [`Error::Domain`] when `γ ≤ 0` ([`FunkHeckeVariant::D`]), `γ ≤ 1/2`
/// ([`FunkHeckeVariant::DPlus1`]), or `A_N^δ` vanishes.
#[allow(clippy::too_many_arguments)]
pub fn funk_hecke_kernel_with(
    opts: FunkHeckeOptions,
    n: usize,
    m: usize,
    delta: f64,
    gamma: f64,
    d: usize,
    variant: FunkHeckeVariant,
    r: f64,
    s: f64,
) -> Result<f64> {
    let (shift, dims) = match variant {
        FunkHeckeVariant::D => (1.0, d),
        FunkHeckeVariant::DPlus1 => (1.5, d + 1),
    };
    if gamma <= shift - 1.0 {
        return Err(Error::Domain(format!(
            "funk_hecke_kernel: variant {variant:?} needs gamma > {}, got {gamma}",
            shift - 1.0
        )));
    }
    let lambda = d as f64 / 2.0 + gamma - 1.0;
    let a_delta = cesaro_coeffs(n, ComplexScalar::new(delta, 0.0))?;
    if a_delta[n].re == 0.0 {
        return Err(Error::Domain(format!("funk_hecke_kernel: A_{n}^delta vanishes at delta = {delta}")));
    }
    let a_gamma = cesaro_coeffs(n / 2, ComplexScalar::new(gamma - shift, 0.0))?;
    let constant = funk_hecke_constant(d, gamma, variant)? * opts.constant_scale;

    let rule = gauss_jacobi_cached(n + m + opts.extra_nodes, lambda - 0.5, lambda - 0.5)?;
    let poly = Ultraspherical::new(m, ComplexScalar::new(lambda, 0.0))?;
    let proj = ProjectionKernel::new(dims)?.with_max_degree(n.max(super::DEFAULT_MAX_DEGREE));
    // moments[i] = ∫ Φ_i(r, s; u) P_m^λ(u) (1−u²)^{λ−1/2} du
    let mut moments = vec![0.0; n + 1];
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let phis = proj.table(n, KernelPoint::new(r, s, u))?;
        let pw = w * poly.eval(u).re;
        for (acc, phi) in moments.iter_mut().zip(&phis) {
            *acc += pw * phi;
        }
    }
    let mut total = 0.0;
    for j in 0..=n / 2 {
        let top = n - 2 * j;
        // A_{top}^δ ∫ σ_top^δ P w du
        let inner: f64 = (0..=top).map(|i| a_delta[top - i].re * moments[i]).sum();
        total += a_gamma[j].re * inner;
    }
    Ok(constant * total / a_delta[n].re)
}

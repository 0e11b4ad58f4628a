use super::{KernelPoint, LaguerreKernel, ProjectionKernel};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_endpoint_singular, EndpointPoint, GradedOptions};
use crate::specfun::{binomial, cesaro_coeffs, log_gamma, ComplexScalar, QFunction, QPolynomialRule};
use std::f64::consts::PI;

/// Parameters of the weighted kernel
/// `𝒦_{N,m}^{ε,ζ}(r, s) = r^{2δ(ζ)/p} s^{2δ(ζ)/p′} K_{N,m}^{δ(ζ+ε),ζ}(r, s)`
/// with `ζ = iβ`, or `ζ = 1/2 + iβ` when `half_shift` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexKernelParams {
    pub n: usize,
    pub m: usize,
    pub epsilon: f64,
    pub beta: f64,
    pub half_shift: bool,
    pub p: f64,
    pub d: usize,
}

impl ComplexKernelParams {
    pub fn zeta(&self) -> ComplexScalar {
        ComplexScalar::new(if self.half_shift { 0.5 } else { 0.0 }, self.beta)
    }

    fn delta_at(&self, zeta: ComplexScalar) -> ComplexScalar {
        zeta + (self.d as f64 - 1.0) / 2.0
    }

    /// Exponents `(2δ(ζ)/p, 2δ(ζ)/p′)` of the radial weights.
    pub fn weight_exponents(&self) -> (ComplexScalar, ComplexScalar) {
        let two_delta = self.delta_at(self.zeta()) * 2.0;
        let p_conj = self.p / (self.p - 1.0);
        (two_delta / self.p, two_delta / p_conj)
    }

    fn weight(&self, r: f64, s: f64) -> ComplexScalar {
        let (a, b) = self.weight_exponents();
        radial_power(r, a) * radial_power(s, b)
    }

    fn validate(&self) -> Result<()> {
        if !(self.p > 2.0) {
            return Err(Error::Domain(format!("complex kernel: p must exceed 2, got {}", self.p)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Domain(format!(
                "complex kernel: epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// The unweighted factored kernel `K_{N,m}^{δ(ζ+ε),ζ}`.
    pub fn laguerre_kernel(&self) -> Result<LaguerreKernel> {
        self.validate()?;
        let zeta = self.zeta();
        LaguerreKernel::new(self.n, self.m, self.delta_at(zeta + self.epsilon), zeta, self.d)
    }
}

/// `r^c` on the principal branch, with `0^c = 0` for `Re c > 0`.
pub(crate) fn radial_power(r: f64, c: ComplexScalar) -> ComplexScalar {
    if r == 0.0 {
        if c == ComplexScalar::new(0.0, 0.0) {
            ComplexScalar::new(1.0, 0.0)
        } else {
            ComplexScalar::new(0.0, 0.0)
        }
    } else {
        (c * r.ln()).exp()
    }
}

/// `𝒦_{N,m}^{ε,ζ}(r, s)` from the Laguerre side.
pub fn complex_kernel(params: ComplexKernelParams, r: f64, s: f64) -> Result<ComplexScalar> {
    Ok(params.weight(r, s) * params.laguerre_kernel()?.eval(r, s))
}

/// How the angular integrals `∫ Φ_i(r, s; u) Q_m(u) du` are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionQuadrature {
    /// Exact polynomial functional of `Q`; valid for every `α > −1/2`.
    Moments,
    /// Pointwise `Q` on a graded mesh; needs `α > 1/2`.
    Pointwise,
}

/// `𝒦_{N,m}^{ε,ζ}(r, s)` from the expansion in Cesàro kernels of real order
/// `δ(ζ+ε/2)` integrated against `Q_m^{λ(ζ)}`, in dimension `d` (`ζ = iβ`) or
/// `d + 1` (`ζ = 1/2 + iβ`).
pub fn complex_kernel_expansion(
    params: ComplexKernelParams,
    quad: ExpansionQuadrature,
    r: f64,
    s: f64,
) -> Result<ComplexScalar> {
    params.validate()?;
    let ComplexKernelParams { n, m, epsilon, beta, half_shift, d, .. } = params;
    let zeta = params.zeta();
    let dims = if half_shift { d + 1 } else { d };
    let alpha = d as f64 / 2.0 - 1.0 + if half_shift { 0.5 } else { 0.0 };

    let proj = ProjectionKernel::new(dims)?.with_max_degree(n.max(super::DEFAULT_MAX_DEGREE));
    let moments: Vec<ComplexScalar> = match quad {
        ExpansionQuadrature::Moments => {
            let rule = QPolynomialRule::new(m, alpha, beta, 0.0, n)?;
            let mut acc = vec![ComplexScalar::new(0.0, 0.0); n + 1];
            for (&u, &w) in rule.points().iter().zip(rule.weights()) {
                let phis = proj.table(n, KernelPoint::new(r, s, u))?;
                for (a, phi) in acc.iter_mut().zip(&phis) {
                    *a += w * phi;
                }
            }
            acc
        }
        ExpansionQuadrature::Pointwise => {
            let q = QFunction::new(m, alpha, beta, 0.0)?;
            let opts = GradedOptions { levels: 30, points: 10 };
            (0..=n)
                .map(|i| {
                    let f = |pt: EndpointPoint| {
                        let phi = proj.table(i, KernelPoint::new(r, s, pt.x)).map(|t| t[i]).unwrap_or(f64::NAN);
                        q.eval(pt.x) * phi
                    };
                    let zero = ComplexScalar::new(0.0, 0.0);
                    integrate_endpoint_singular(-1.0, 1.0, zero, zero, f, opts)
                })
                .collect()
        }
    };

    let half_eps = ComplexScalar::new(epsilon / 2.0, 0.0);
    let inner_delta = params.delta_at(zeta + half_eps);
    let a_inner = cesaro_coeffs(n, inner_delta)?;
    let a_strip = cesaro_coeffs(n / 2, ComplexScalar::new(epsilon / 2.0 - 1.0, beta))?;
    let a_full = cesaro_coeffs(n, params.delta_at(zeta + epsilon))?;
    if a_full[n].norm() == 0.0 {
        return Err(Error::Domain("complex kernel expansion: vanishing normalizer".into()));
    }
    // x[k] = A_k^{δ'} ∫ σ_k^{δ'} Q du
    let x: Vec<ComplexScalar> = (0..=n)
        .map(|k| (0..=k).map(|i| a_inner[k - i] * moments[i]).sum())
        .collect();
    let mut total = ComplexScalar::new(0.0, 0.0);
    for k in 0..=n {
        let inner: ComplexScalar = (0..=k / 2).map(|j| a_strip[j] * x[k - 2 * j]).sum();
        total += binomial(half_eps, n - k) * inner;
    }
    let constant = {
        let h = (dims as f64 - 1.0) / 2.0;
        4.0 * (h * PI.ln() - log_gamma(ComplexScalar::new(h, 0.0))?.re).exp()
    };
    Ok(params.weight(r, s) * total * constant / a_full[n])
}

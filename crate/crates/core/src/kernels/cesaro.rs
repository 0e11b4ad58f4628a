use super::{projection_kernels, KernelPoint};
use crate::error::{Error, Result};
use crate::specfun::{cesaro_coeffs, ComplexScalar};

/// `σ_N^δ(r, s; u) = (1/A_N^δ) Σ_{j≤N} A_{N−j}^δ Φ_j(r, s; u)`.
///
/// # Errors
/// [`Error::Domain`] when `A_N^δ` vanishes or a coefficient hits a pole.
pub fn cesaro_kernel(n: usize, delta: ComplexScalar, d: usize, pt: KernelPoint) -> Result<ComplexScalar> {
    let phis = projection_kernels(n, d, pt)?;
    cesaro_from_projections(n, delta, &phis)
}

/// The Cesàro mean of order `δ` built from precomputed projections `phis[j] = Φ_j`.
pub fn cesaro_from_projections(n: usize, delta: ComplexScalar, phis: &[f64]) -> Result<ComplexScalar> {
    let a = cesaro_coeffs(n, delta)?;
    if a[n].norm() == 0.0 {
        return Err(Error::Domain(format!("cesaro kernel: A_{n}^delta vanishes at delta = {delta}")));
    }
    let sum: ComplexScalar = (0..=n).map(|j| a[n - j] * phis[j]).sum();
    Ok(sum / a[n])
}

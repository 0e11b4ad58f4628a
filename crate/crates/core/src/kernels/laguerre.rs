use crate::error::{Error, Result};
use crate::specfun::{cesaro_coeffs, ComplexScalar, LaguerreBasis};

/// Factored Laguerre form
/// `K_{N,m}(r, s) = Σ_j c_j φ_j(r) φ_j(s)` with `φ_j(r) = r^m ψ_j^{λ+m}(r)` and
/// `c_j = A_{N−m−2j}^δ / A_N^δ`, `λ = d/2 + ζ − 1`.
#[derive(Debug, Clone)]
pub struct LaguerreKernel {
    n: usize,
    m: usize,
    coeffs: Vec<ComplexScalar>,
    basis: Option<LaguerreBasis>,
}

impl LaguerreKernel {
    /// # Errors
    /// [`Error::Domain`] from the Cesàro coefficients or the Laguerre normalizations.
    pub fn new(n: usize, m: usize, delta: ComplexScalar, zeta: ComplexScalar, d: usize) -> Result<Self> {
        if n < m {
            return Ok(Self {
                n,
                m,
                coeffs: Vec::new(),
                basis: None,
            });
        }
        let a = cesaro_coeffs(n, delta)?;
        if a[n].norm() == 0.0 {
            return Err(Error::Domain(format!("laguerre kernel: A_{n}^delta vanishes at delta = {delta}")));
        }
        let jmax = (n - m) / 2;
        let coeffs = (0..=jmax).map(|j| a[n - m - 2 * j] / a[n]).collect();
        let lambda = zeta + (d as f64 / 2.0 - 1.0);
        let basis = LaguerreBasis::new(jmax, lambda + m as f64)?;
        Ok(Self {
            n,
            m,
            coeffs,
            basis: Some(basis),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// `c_j`; empty when `N < m`.
    pub fn coefficients(&self) -> &[ComplexScalar] {
        &self.coeffs
    }

    /// `[φ_0(r), …]`; empty when `N < m`.
    pub fn modes(&self, r: f64) -> Vec<ComplexScalar> {
        match &self.basis {
            Some(b) => {
                let rm = r.powi(self.m as i32);
                b.table(r).into_iter().map(|v| v * rm).collect()
            }
            None => Vec::new(),
        }
    }

    pub fn eval(&self, r: f64, s: f64) -> ComplexScalar {
        let (pr, ps) = (self.modes(r), self.modes(s));
        self.coeffs
            .iter()
            .zip(pr.iter().zip(&ps))
            .map(|(c, (a, b))| c * a * b)
            .sum()
    }
}

/// `K_{N,m}^{δ,ζ}(r, s)` from the Laguerre sum; exactly zero for `N < m`.
pub fn k_laguerre(
    n: usize,
    m: usize,
    delta: ComplexScalar,
    zeta: ComplexScalar,
    d: usize,
    r: f64,
    s: f64,
) -> Result<ComplexScalar> {
    Ok(LaguerreKernel::new(n, m, delta, zeta, d)?.eval(r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{cesaro_coeff, laguerre_fn};

    fn cx(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn zero_below_order() {
        assert_eq!(k_laguerre(3, 5, cx(2.0, 0.0), cx(0.3, 0.0), 2, 0.7, 1.2).unwrap(), cx(0.0, 0.0));
    }

    #[test]
    fn single_term_at_equal_degree() {
        let (n, d, r, s) = (4usize, 2usize, 0.9f64, 1.4f64);
        let (delta, zeta) = (cx(2.1, 0.0), cx(0.3, 0.0));
        let lambda = zeta + (d as f64 / 2.0 - 1.0);
        let expect = cesaro_coeff(0, delta).unwrap() / cesaro_coeff(n, delta).unwrap()
            * (r * s).powi(n as i32)
            * laguerre_fn(0, lambda + n as f64, r).unwrap()
            * laguerre_fn(0, lambda + n as f64, s).unwrap();
        let got = k_laguerre(n, n, delta, zeta, d, r, s).unwrap();
        assert!((got - expect).norm() < 1e-15);
    }

    #[test]
    fn symmetric_for_real_parameters() {
        let a = k_laguerre(12, 3, cx(2.1, 0.0), cx(0.3, 0.0), 2, 0.5, 2.2).unwrap();
        let b = k_laguerre(12, 3, cx(2.1, 0.0), cx(0.3, 0.0), 2, 2.2, 0.5).unwrap();
        assert!((a - b).norm() < 1e-15);
        assert!(a.im.abs() < 1e-15 * a.norm());
    }
}

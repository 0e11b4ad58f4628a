use super::KernelPoint;
use crate::error::{Error, Result};
use crate::specfun::{hermite_fn_table, ComplexScalar};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

/// Largest projection degree accepted unless configured otherwise.
pub const DEFAULT_MAX_DEGREE: usize = 80;

/// Projection kernels `Φ_j^{(d)}(r, s; u)` of the `d`-dimensional Hermite operator.
///
/// With `x = (r, 0, …)` and `y = (su, s√(1−u²), 0, …)` only two coordinates are
/// nonzero, so the multi-index sum is a convolution of three sequences: the
/// first-coordinate products, the second-coordinate products, and the
/// zero-point kernel of the remaining `d − 2` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionKernel {
    d: usize,
    max_degree: usize,
}

impl ProjectionKernel {
    /// # Errors
    /// [`Error::Domain`] for `d < 2`.
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("projection kernel needs d >= 2, got {d}")));
        }
        Ok(Self {
            d,
            max_degree: DEFAULT_MAX_DEGREE,
        })
    }

    pub fn with_max_degree(mut self, max_degree: usize) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// `[Φ_0, …, Φ_{jmax}]` at `pt`.
    pub fn table(&self, jmax: usize, pt: KernelPoint) -> Result<Vec<f64>> {
        if jmax > self.max_degree {
            return Err(Error::Capacity {
                what: "projection degree",
                requested: jmax,
                max: self.max_degree,
            });
        }
        let u = pt.u.clamp(-1.0, 1.0);
        let h_r = hermite_fn_table(jmax, pt.r);
        let h_su = hermite_fn_table(jmax, pt.s * u);
        let h_zero = hermite_fn_table(jmax, 0.0);
        let h_perp = hermite_fn_table(jmax, pt.s * (1.0 - u * u).sqrt());
        let first: Vec<f64> = h_r.iter().zip(&h_su).map(|(a, b)| a * b).collect();
        let second: Vec<f64> = h_zero.iter().zip(&h_perp).map(|(a, b)| a * b).collect();
        let plane = convolve(&first, &second, jmax);
        if self.d == 2 {
            return Ok(plane);
        }
        let zero_point = zero_point_kernel(self.d - 2, jmax);
        Ok(convolve(&plane, &zero_point, jmax))
    }

    pub fn eval(&self, j: usize, pt: KernelPoint) -> Result<f64> {
        Ok(self.table(j, pt)?[j])
    }
}

fn convolve(a: &[f64], b: &[f64], jmax: usize) -> Vec<f64> {
    (0..=jmax)
        .map(|j| (0..=j).map(|i| a[i] * b[j - i]).sum())
        .collect()
}

/// `Φ_l^{(n)}(0, 0)` for `l ≤ jmax`, memoized per dimension.
fn zero_point_kernel(n: usize, jmax: usize) -> Vec<f64> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("zero-point cache poisoned").get(&n) {
        if v.len() > jmax {
            return v[..=jmax].to_vec();
        }
    }
    let len = jmax.max(2 * DEFAULT_MAX_DEGREE);
    let h0 = hermite_fn_table(len, 0.0);
    let single: Vec<f64> = h0.iter().map(|h| h * h).collect();
    let mut acc = vec![0.0; len + 1];
    acc[0] = 1.0;
    for _ in 0..n {
        acc = convolve(&acc, &single, len);
    }
    let acc = Arc::new(acc);
    cache
        .write()
        .expect("zero-point cache poisoned")
        .insert(n, Arc::clone(&acc));
    acc[..=jmax].to_vec()
}

/// `Φ_j^{(d)}(r, s; u)` with the default degree cap.
pub fn hermite_projection_kernel(j: usize, d: usize, pt: KernelPoint) -> Result<f64> {
    ProjectionKernel::new(d)?.eval(j, pt)
}

/// `[Φ_0^{(d)}, …, Φ_{jmax}^{(d)}]` at `pt` with the default degree cap.
pub fn projection_kernels(jmax: usize, d: usize, pt: KernelPoint) -> Result<Vec<f64>> {
    ProjectionKernel::new(d)?.table(jmax, pt)
}

/// Closed form of `Σ_j w^j Φ_j^{(d)}(r, s; u)` for `|w| < 1`:
/// `π^{−d/2} (1−w²)^{−d/2} exp(−½ (1+w²)/(1−w²) (r²+s²) + 2w r s u/(1−w²))`.
pub fn mehler_closed_form(d: usize, w: ComplexScalar, pt: KernelPoint) -> ComplexScalar {
    let one_minus = 1.0 - w * w;
    let expo = -(1.0 + w * w) / one_minus * (0.5 * (pt.r * pt.r + pt.s * pt.s))
        + w * (2.0 * pt.r * pt.s * pt.u) / one_minus;
    let half_d = d as f64 / 2.0;
    PI.powf(-half_d) * (expo - one_minus.ln() * half_d).exp()
}

/// Taylor coefficients of [`mehler_closed_form`] in `w`, by averaging over
/// `4(jmax+1)` points of the circle `|w| = radius`.
pub fn mehler_coefficients(jmax: usize, d: usize, pt: KernelPoint, radius: f64) -> Vec<f64> {
    let count = 4 * (jmax + 1);
    let samples: Vec<ComplexScalar> = (0..count)
        .map(|k| {
            let w = ComplexScalar::from_polar(radius, 2.0 * PI * k as f64 / count as f64);
            mehler_closed_form(d, w, pt)
        })
        .collect();
    (0..=jmax)
        .map(|j| {
            let sum: ComplexScalar = samples
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    v * ComplexScalar::from_polar(1.0, -2.0 * PI * (j * k % count) as f64 / count as f64)
                })
                .sum();
            sum.re / count as f64 / radius.powi(j as i32)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::cesaro_coeff;

    #[test]
    fn degree_zero() {
        for d in 2..6 {
            let pt = KernelPoint::new(0.7, 1.3, -0.2);
            let expect = PI.powf(-(d as f64) / 2.0) * (-(0.49 + 1.69) / 2.0f64).exp();
            assert!((hermite_projection_kernel(0, d, pt).unwrap() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_in_radii() {
        let pt = KernelPoint::new(0.4, 1.9, 0.35);
        let a = hermite_projection_kernel(5, 2, pt).unwrap();
        let b = hermite_projection_kernel(5, 2, pt.swapped()).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn matches_circle_coefficients() {
        for d in [2, 3, 4] {
            for pt in [KernelPoint::new(0.5, 1.2, 0.3), KernelPoint::new(1.5, 0.2, -0.9), KernelPoint::new(1.0, 1.0, 1.0)] {
                let direct = projection_kernels(10, d, pt).unwrap();
                let oracle = mehler_coefficients(10, d, pt, 0.4);
                for j in 0..=10 {
                    assert!((direct[j] - oracle[j]).abs() < 1e-8, "d={d} j={j}: {} vs {}", direct[j], oracle[j]);
                }
            }
        }
    }

    #[test]
    fn zero_point_closed_form() {
        // Φ_{2k}^{(n)}(0,0) = π^{−n/2} A_k^{n/2−1}, odd degrees vanish.
        for n in 1..5 {
            let z = zero_point_kernel(n, 12);
            for (l, v) in z.iter().enumerate() {
                let expect = if l % 2 == 1 {
                    0.0
                } else {
                    PI.powf(-(n as f64) / 2.0)
                        * cesaro_coeff(l / 2, ComplexScalar::new(n as f64 / 2.0 - 1.0, 0.0)).unwrap().re
                };
                assert!((v - expect).abs() < 1e-14, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let pt = KernelPoint::new(1.0, 1.0, 0.0);
        assert!(matches!(
            hermite_projection_kernel(81, 2, pt),
            Err(Error::Capacity { .. })
        ));
        assert!(ProjectionKernel::new(2).unwrap().with_max_degree(120).eval(120, pt).is_ok());
    }

    #[test]
    fn diagonal_closed_form() {
        // u = 1, r = s: π^{−d/2}(1−w²)^{−d/2} exp(−(1−w)/(1+w) r²)
        let (d, r) = (3, 0.8);
        let w = ComplexScalar::new(0.3, 0.2);
        let general = mehler_closed_form(d, w, KernelPoint::new(r, r, 1.0));
        let special = PI.powf(-1.5) * (1.0 - w * w).powf(-1.5) * (-(1.0 - w) / (1.0 + w) * (r * r)).exp();
        assert!((general - special).norm() < 1e-14);
    }
}

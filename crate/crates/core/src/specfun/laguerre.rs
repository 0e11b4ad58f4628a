use super::{log_gamma, ComplexScalar};
use crate::error::{domain, Result};

const RESCALE: f64 = 1e150;

/// Normalized Laguerre function
/// `ψ_k^α(r) = (2Γ(k+1)/Γ(k+α+1))^{1/2} L_k^α(r²) e^{-r²/2}`,
/// orthonormal in `L²(r^{2α+1} dr)` on the half-line.
///
/// The square root is `exp(½(ln Γ(k+1) − ln Γ(k+α+1)))` with principal log-Γ.
pub fn laguerre_fn(k: usize, alpha: ComplexScalar, r: f64) -> Result<ComplexScalar> {
    Ok(LaguerreBasis::new(k, alpha)?.table(r)[k])
}

/// Precomputed normalizations for `ψ_0^α, …, ψ_{kmax}^α`, reused across many radii.
#[derive(Debug, Clone)]
pub struct LaguerreBasis {
    alpha: ComplexScalar,
    // ½(ln Γ(k+1) − ln Γ(k+α+1)) + ½ ln 2
    log_norm: Vec<ComplexScalar>,
}

impl LaguerreBasis {
    /// # Errors
    /// [`crate::Error::Domain`] when `Γ(k+α+1)` has a pole for some `k ≤ kmax`.
    pub fn new(kmax: usize, alpha: ComplexScalar) -> Result<Self> {
        let mut log_norm = Vec::with_capacity(kmax + 1);
        let half_ln2 = 0.5 * std::f64::consts::LN_2;
        let right_half = (alpha + 1.0).re > 0.0;
        let mut lg_alpha = if right_half {
            Some(log_gamma(alpha + 1.0)?)
        } else {
            None
        };
        let mut lg_fact = 0.0;
        for k in 0..=kmax {
            let kf = k as f64;
            if k > 0 {
                lg_fact += kf.ln();
            }
            let lg = match lg_alpha.as_mut() {
                Some(acc) => {
                    if k > 0 {
                        // Recurrence stays on the principal branch for Re > 0.
                        *acc += (alpha + kf).ln();
                    }
                    *acc
                }
                None => log_gamma(alpha + kf + 1.0).map_err(|e| {
                    domain(format!("laguerre normalization for k = {k}, alpha = {alpha}: {e}"))
                })?,
            };
            log_norm.push(0.5 * (lg_fact - lg) + half_ln2);
        }
        Ok(Self { alpha, log_norm })
    }

    pub fn kmax(&self) -> usize {
        self.log_norm.len() - 1
    }

    pub fn alpha(&self) -> ComplexScalar {
        self.alpha
    }

    /// `[ψ_0^α(r), …, ψ_{kmax}^α(r)]`.
    pub fn table(&self, r: f64) -> Vec<ComplexScalar> {
        let x = r * r;
        let kmax = self.kmax();
        let alpha = self.alpha;
        let mut out = Vec::with_capacity(kmax + 1);
        let mut log_scale = -0.5 * x;
        let emit = |p: ComplexScalar, log_scale: f64, k: usize| {
            if p.norm() == 0.0 {
                ComplexScalar::new(0.0, 0.0)
            } else {
                (p.ln() + log_scale + self.log_norm[k]).exp()
            }
        };
        let mut prev = ComplexScalar::new(0.0, 0.0);
        let mut cur = ComplexScalar::new(1.0, 0.0);
        out.push(emit(cur, log_scale, 0));
        for k in 0..kmax {
            let kf = k as f64;
            let next = if k == 0 {
                alpha + 1.0 - x
            } else {
                ((alpha + (2.0 * kf + 1.0 - x)) * cur - (alpha + kf) * prev) / (kf + 1.0)
            };
            prev = cur;
            cur = next;
            if cur.norm() > RESCALE {
                cur /= RESCALE;
                prev /= RESCALE;
                log_scale += RESCALE.ln();
            }
            out.push(emit(cur, log_scale, k + 1));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;
    use crate::specfun::gamma;

    #[test]
    fn base_case() {
        let alpha = ComplexScalar::new(1.5, 0.0);
        let r: f64 = 0.7;
        let expect = (2.0 / gamma(alpha + 1.0).unwrap()).sqrt() * (-0.5 * r * r).exp();
        let got = laguerre_fn(0, alpha, r).unwrap();
        assert!((got - expect).norm() < 1e-15);
    }

    #[test]
    fn orthonormal_alpha_two() {
        let alpha = ComplexScalar::new(2.0, 0.0);
        let basis = LaguerreBasis::new(20, alpha).unwrap();
        let gl = gauss_legendre(24);
        let mut gram = vec![[0.0f64; 21]; 21];
        for panel in 0..30 {
            let lo = 0.5 * panel as f64;
            for (t, w) in gl.nodes().iter().zip(gl.weights()) {
                let r = lo + 0.25 * (t + 1.0);
                let psi = basis.table(r);
                let weight = 0.25 * w * r.powi(5);
                for j in 0..=20 {
                    for k in 0..=20 {
                        gram[j][k] += weight * psi[j].re * psi[k].re;
                    }
                }
            }
        }
        for j in 0..=20 {
            for k in 0..=20 {
                let target = if j == k { 1.0 } else { 0.0 };
                assert!((gram[j][k] - target).abs() < 1e-8, "({j},{k}) -> {}", gram[j][k]);
            }
        }
    }

    #[test]
    fn continuous_in_imaginary_part_of_order() {
        let up = laguerre_fn(3, ComplexScalar::new(1.0, 1e-6), 0.9).unwrap();
        let down = laguerre_fn(3, ComplexScalar::new(1.0, -1e-6), 0.9).unwrap();
        assert!((up - down).norm() < 1e-4 * up.norm());
        let mid = laguerre_fn(3, ComplexScalar::new(1.0, 0.0), 0.9).unwrap();
        assert!(mid.im.abs() < 1e-15 * mid.norm());
    }

    #[test]
    fn explicit_degree_two() {
        // L_2^α(x) = ((α+1)(α+2) − 2(α+2)x + x²)/2
        let alpha = ComplexScalar::new(0.4, 0.9);
        let r: f64 = 1.3;
        let x = r * r;
        let l2 = ((alpha + 1.0) * (alpha + 2.0) - 2.0 * (alpha + 2.0) * x + x * x) / 2.0;
        let norm = (2.0 * 2.0 / gamma(alpha + 3.0).unwrap()).sqrt();
        let expect = norm * l2 * (-0.5 * x).exp();
        let got = laguerre_fn(2, alpha, r).unwrap();
        assert!((got - expect).norm() < 1e-14);
    }

    #[test]
    fn far_tail_is_finite() {
        let basis = LaguerreBasis::new(150, ComplexScalar::new(3.0, 0.5)).unwrap();
        for r in [0.0, 5.0, 25.0, 40.0] {
            assert!(basis.table(r).iter().all(|v| v.re.is_finite() && v.im.is_finite()));
        }
    }

    #[test]
    fn pole_in_normalization() {
        assert!(LaguerreBasis::new(3, ComplexScalar::new(-3.0, 0.0)).is_err());
    }
}

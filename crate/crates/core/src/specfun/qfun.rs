use super::{c, log_gamma, rgamma, ComplexScalar, Ultraspherical};
use crate::error::{domain, Result};
use crate::quadrature::{
    gauss_jacobi_cached, integrate_endpoint_singular, EndpointPoint, GradedOptions,
};
use nalgebra::{DMatrix, DVector};

/// Complex-order variant of the weighted ultraspherical polynomial,
/// `Q_m^{λ,ε}(u) = Γ(μ)^{-1} ∫_{|u|}^1 P_m^α(u/s) (s²−u²)^{α−1/2} (1−s²)^{μ−1} s^{m+1} ds`
/// with `λ = α + iβ` and `μ = iβ + ε`.
///
/// For `ε = 0` the limit is evaluated from the once-integrated form
/// `(2Γ(1+iβ))^{-1} ∫_{|u|}^1 d/ds[f(u/s) g(s)] (1−s²)^{iβ} ds`,
/// `f(v) = P_m^α(v)(1−v²)^{α−1/2}`, `g(s) = s^{2α+m−1}`.
#[derive(Debug, Clone)]
pub struct QFunction {
    m: usize,
    alpha: f64,
    beta: f64,
    epsilon: f64,
    poly: Ultraspherical,
    // 1/Γ(μ) for ε > 0, 1/(2Γ(1+iβ)) for ε = 0
    prefactor: ComplexScalar,
    opts: GradedOptions,
}

impl QFunction {
    /// # Errors
    /// [`crate::Error::Domain`] for `α ≤ 1/2` or `ε < 0`.
    pub fn new(m: usize, alpha: f64, beta: f64, epsilon: f64) -> Result<Self> {
        if alpha <= 0.5 {
            return Err(domain(format!(
                "q_fn: alpha must exceed 1/2 (boundary terms survive otherwise), got {alpha}"
            )));
        }
        if !(epsilon >= 0.0) {
            return Err(domain(format!("q_fn: epsilon must be nonnegative, got {epsilon}")));
        }
        let poly = Ultraspherical::new(m, c(alpha))?;
        let prefactor = if epsilon > 0.0 {
            rgamma(ComplexScalar::new(epsilon, beta))
        } else {
            rgamma(ComplexScalar::new(1.0, beta)) * 0.5
        };
        Ok(Self {
            m,
            alpha,
            beta,
            epsilon,
            poly,
            prefactor,
            opts: GradedOptions::default(),
        })
    }

    pub fn with_options(mut self, opts: GradedOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn eval(&self, u: f64) -> ComplexScalar {
        let a = u.abs();
        if a >= 1.0 {
            return ComplexScalar::new(0.0, 0.0);
        }
        let (alpha, m) = (self.alpha, self.m as f64);
        let mu = ComplexScalar::new(self.epsilon, self.beta);
        if self.epsilon > 0.0 {
            let g = |pt: EndpointPoint| {
                let s = pt.x;
                let smooth = (s + a).powf(alpha - 0.5) * s.powf(m + 1.0);
                self.poly.eval(u / s) * (mu - 1.0).scale((1.0 + s).ln()).exp() * smooth
            };
            self.prefactor
                * integrate_endpoint_singular(a, 1.0, c(alpha - 0.5), mu - 1.0, g, self.opts)
        } else {
            let ib = ComplexScalar::new(0.0, self.beta);
            let twist = |s: f64| ib.scale((1.0 + s).ln()).exp();
            if a == 0.0 {
                // v = 0 throughout, so only P(0) g'(s) survives.
                let lead = self.poly.eval(0.0) * (2.0 * alpha + m - 1.0);
                let h = |pt: EndpointPoint| lead * twist(pt.x);
                return self.prefactor * integrate_endpoint_singular(0.0, 1.0, c(2.0 * alpha + m - 2.0), ib, h, self.opts);
            }
            // The factor s^{2α+m−2} varies on the scale |u|; grade until the terminal panel is far below it.
            let depth = (((1.0 - a) / a).log2().ceil().max(0.0) as usize + 24).min(1000);
            let opts = GradedOptions {
                levels: self.opts.levels.max(depth),
                ..self.opts
            };
            let g = |pt: EndpointPoint| {
                let s = pt.x;
                let v = u / s;
                let one_minus_v2 = pt.from_left * (s + a) / (s * s);
                let gs = s.powf(2.0 * alpha + m - 1.0);
                let dgs = (2.0 * alpha + m - 1.0) * s.powf(2.0 * alpha + m - 2.0);
                let p = self.poly.eval(v);
                let dp = self.poly.eval_deriv(v);
                let bracket = (dp * one_minus_v2 - p * ((2.0 * alpha - 1.0) * v)) * (-u / (s * s) * gs)
                    + p * (one_minus_v2 * dgs);
                let outer = ((s + a) / (s * s)).powf(alpha - 1.5);
                bracket * outer * twist(s)
            };
            self.prefactor * integrate_endpoint_singular(a, 1.0, c(alpha - 1.5), ib, g, opts)
        }
    }
}

/// `Q_m^{λ,ε}(u)` (or the `ε = 0` limit); see [`QFunction`].
pub fn q_fn(m: usize, alpha: f64, beta: f64, u: f64, epsilon: f64) -> Result<ComplexScalar> {
    Ok(QFunction::new(m, alpha, beta, epsilon)?.eval(u))
}

/// `Q_0^{λ,ε}(u) = Γ(α+1/2) / (2Γ(λ+ε+1/2)) · (1−u²)^{λ+ε−1/2}`.
pub fn q_closed_form_m0(alpha: f64, beta: f64, epsilon: f64, u: f64) -> Result<ComplexScalar> {
    if u.abs() >= 1.0 {
        return Ok(ComplexScalar::new(0.0, 0.0));
    }
    let shifted = ComplexScalar::new(alpha + epsilon + 0.5, beta);
    let ratio = (log_gamma(c(alpha + 0.5))? - log_gamma(shifted)?).exp();
    Ok(ratio * 0.5 * ((shifted - 1.0) * (1.0 - u * u).ln()).exp())
}

/// Linear functional `p ↦ ∫_{−1}^{1} p(u) Q_m^{λ,ε}(u) du`, exact for polynomials
/// of a fixed degree, written as a rule with complex weights.
///
/// Swapping the order of integration turns the functional into
/// `½ Σ_l h_l Γ(m+α+l+1)/Γ(m+α+l+1+μ)`, where `s^m Σ_l h_l s^{2l}` is
/// `∫ p(sv) P_m^α(v)(1−v²)^{α−1/2} dv`. The Γ-ratio form stays finite at
/// `Re μ = 0`, so this covers every `α > −1/2`, including the `ε = 0` limit.
#[derive(Debug, Clone)]
pub struct QPolynomialRule {
    points: Vec<f64>,
    weights: Vec<ComplexScalar>,
}

impl QPolynomialRule {
    /// # Errors
    /// [`crate::Error::Domain`] for `α ≤ −1/2` or `ε < 0`.
    pub fn new(m: usize, alpha: f64, beta: f64, epsilon: f64, degree: usize) -> Result<Self> {
        if alpha <= -0.5 {
            return Err(domain(format!("Q polynomial rule: alpha must exceed -1/2, got {alpha}")));
        }
        if !(epsilon >= 0.0) {
            return Err(domain(format!("Q polynomial rule: epsilon must be nonnegative, got {epsilon}")));
        }
        if degree < m {
            return Ok(Self {
                points: Vec::new(),
                weights: Vec::new(),
            });
        }
        let levels = (degree - m) / 2 + 1;
        let mu = ComplexScalar::new(epsilon, beta);
        let shift = m as f64 + alpha + 1.0;
        let moments: Vec<ComplexScalar> = (0..levels)
            .map(|l| {
                let base = c(shift + l as f64);
                if mu == ComplexScalar::new(0.0, 0.0) {
                    Ok(c(1.0))
                } else {
                    Ok((log_gamma(base)? - log_gamma(base + mu)?).exp())
                }
            })
            .collect::<Result<_>>()?;

        // Chebyshev points on (0, 1) in t = s²; weights of the interpolatory rule for the moments.
        let t: Vec<f64> = (0..levels)
            .map(|q| {
                0.5 * (1.0
                    - ((2 * q + 1) as f64 * std::f64::consts::PI / (2 * levels) as f64).cos())
            })
            .collect();
        let vt = DMatrix::from_fn(levels, levels, |l, q| t[q].powi(l as i32));
        let lu = vt.lu();
        let solve = |rhs: Vec<f64>| {
            lu.solve(&DVector::from_vec(rhs))
                .expect("Chebyshev Vandermonde system is nonsingular")
        };
        let q_re = solve(moments.iter().map(|z| z.re).collect());
        let q_im = solve(moments.iter().map(|z| z.im).collect());

        let inner = gauss_jacobi_cached((degree + m) / 2 + 1, alpha - 0.5, alpha - 0.5)?;
        let poly = Ultraspherical::new(m, c(alpha))?;
        let pv: Vec<ComplexScalar> = inner.nodes().iter().map(|&v| poly.eval(v)).collect();

        let mut points = Vec::with_capacity(levels * inner.len());
        let mut weights = Vec::with_capacity(levels * inner.len());
        for q in 0..levels {
            let s = t[q].sqrt();
            let wq = ComplexScalar::new(q_re[q], q_im[q]) * (0.5 / s.powi(m as i32));
            for ((&v, &w), &p) in inner.nodes().iter().zip(inner.weights()).zip(&pv) {
                points.push(s * v);
                weights.push(wq * p * w);
            }
        }
        Ok(Self { points, weights })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[ComplexScalar] {
        &self.weights
    }

    /// Functional applied to values sampled at [`Self::points`].
    pub fn apply(&self, values: &[ComplexScalar]) -> ComplexScalar {
        debug_assert_eq!(values.len(), self.points.len());
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    pub fn integrate<F: Fn(f64) -> ComplexScalar>(&self, p: F) -> ComplexScalar {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&u, w)| w * p(u))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_jacobi;
    use crate::specfun::{gamma, ultraspherical};

    fn cx(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn vanishes_at_endpoints() {
        for eps in [0.0, 0.5] {
            assert_eq!(q_fn(3, 1.5, 0.7, 1.0, eps).unwrap(), cx(0.0, 0.0));
            assert_eq!(q_fn(3, 1.5, 0.7, -1.0, eps).unwrap(), cx(0.0, 0.0));
        }
    }

    #[test]
    fn rejects_small_alpha() {
        assert!(q_fn(1, 0.5, 0.3, 0.2, 0.0).is_err());
    }

    #[test]
    fn real_collapse_at_zero_beta() {
        let (m, alpha) = (3, 1.5);
        let q = QFunction::new(m, alpha, 0.0, 0.0).unwrap();
        for i in 0..21 {
            let u = -0.98 + 0.098 * i as f64;
            let expect = 0.5 * ultraspherical(m, c(alpha), u).unwrap() * (1.0 - u * u).powf(alpha - 0.5);
            assert!((q.eval(u) - expect).norm() < 1e-8, "u = {u}");
        }
    }

    #[test]
    fn m_zero_closed_form() {
        for (beta, eps) in [(0.5, 0.0), (1.0, 0.25), (-2.0, 0.5)] {
            let q = QFunction::new(0, 1.2, beta, eps).unwrap();
            for u in [-0.9, -0.3, 0.0, 0.45, 0.99] {
                let expect = q_closed_form_m0(1.2, beta, eps, u).unwrap();
                assert!((q.eval(u) - expect).norm() < 1e-9, "beta={beta} eps={eps} u={u}");
            }
        }
    }

    #[test]
    fn limit_near_and_at_origin() {
        // Strong endpoint factor at α close to 1/2; compare against the collapse formula.
        for alpha in [0.6, 0.75] {
            for m in [0, 2] {
                let q = QFunction::new(m, alpha, 0.0, 0.0).unwrap();
                let poly = Ultraspherical::new(m, c(alpha)).unwrap();
                for u in [0.0, 1e-13, 1e-6, 0.01] {
                    let expect = poly.eval(u) * (0.5 * (1.0 - u * u).powf(alpha - 0.5));
                    assert!((q.eval(u) - expect).norm() < 1e-11, "α={alpha} m={m} u={u}: {} vs {expect}", q.eval(u));
                }
            }
        }
    }

    #[test]
    fn parity_in_u() {
        let q = QFunction::new(4, 1.0, 0.5, 0.0).unwrap();
        let r = QFunction::new(3, 1.0, 0.5, 0.25).unwrap();
        for u in [0.1, 0.5, 0.8] {
            assert!((q.eval(u) - q.eval(-u)).norm() < 1e-12);
            assert!((r.eval(u) + r.eval(-u)).norm() < 1e-12);
        }
    }

    #[test]
    fn small_epsilon_approaches_limit() {
        let limit = q_fn(2, 1.5, 0.5, 0.4, 0.0).unwrap();
        let near = q_fn(2, 1.5, 0.5, 0.4, 1e-4).unwrap();
        assert!((limit - near).norm() < 1e-3 * limit.norm());
    }

    #[test]
    fn polynomial_rule_matches_pointwise_integral() {
        let p = |u: f64| cx(1.0 - 2.0 * u + 0.5 * u.powi(3) + 0.25 * u.powi(6) - u.powi(8), 0.0);
        for (m, alpha, beta, eps) in [(2, 1.0, 0.5, 0.0), (3, 1.5, -1.0, 0.25), (0, 0.8, 2.0, 0.5)] {
            let rule = QPolynomialRule::new(m, alpha, beta, eps, 8).unwrap();
            let q = QFunction::new(m, alpha, beta, eps).unwrap();
            let direct = integrate_endpoint_singular(
                -1.0,
                1.0,
                cx(0.0, 0.0),
                cx(0.0, 0.0),
                |pt: EndpointPoint| q.eval(pt.x) * p(pt.x),
                GradedOptions { levels: 30, points: 12 },
            );
            let via_rule = rule.integrate(p);
            assert!((direct - via_rule).norm() < 1e-9, "m={m}: {direct} vs {via_rule}");
        }
    }

    #[test]
    fn polynomial_rule_collapse_below_half() {
        // β = 0, ε = 0: Q = ½ P_m^α (1−u²)^{α−1/2}, also for α ≤ 1/2.
        for alpha in [0.0, 0.5, -0.25] {
            let m = 2;
            let rule = QPolynomialRule::new(m, alpha, 0.0, 0.0, 9).unwrap();
            let gj = gauss_jacobi(20, alpha - 0.5, alpha - 0.5).unwrap();
            let p = |u: f64| cx(u.powi(2) - 3.0 * u.powi(4) + u.powi(9), 0.0);
            let expect: ComplexScalar = gj.integrate(|u| 0.5 * ultraspherical(m, c(alpha), u).unwrap() * p(u));
            assert!((rule.integrate(p) - expect).norm() < 1e-12, "alpha = {alpha}");
        }
    }

    #[test]
    fn polynomial_rule_m0_moments() {
        // ∫ u^{2k} Q_0 du with Q_0 in closed form: ½ Γ(α+½)/Γ(λ+ε+½) · B(k+½, λ+ε+½)
        let (alpha, beta, eps) = (0.0, 0.5, 0.0);
        let rule = QPolynomialRule::new(0, alpha, beta, eps, 10).unwrap();
        for k in 0..=5 {
            let lam = cx(alpha + eps, beta);
            let b = gamma(c(k as f64 + 0.5)).unwrap() * gamma(lam + 0.5).unwrap() / gamma(lam + k as f64 + 1.0).unwrap();
            let expect = 0.5 * gamma(c(alpha + 0.5)).unwrap() / gamma(lam + 0.5).unwrap() * b;
            let got = rule.integrate(|u| c(u.powi(2 * k)));
            assert!((got - expect).norm() < 1e-12, "k={k}: {got} vs {expect}");
        }
    }

    #[test]
    fn below_degree_is_zero() {
        let rule = QPolynomialRule::new(5, 1.0, 0.5, 0.0, 4).unwrap();
        assert_eq!(rule.integrate(c), cx(0.0, 0.0));
    }
}

use super::jacobi::{gauss_jacobi_cached, gauss_legendre};
use super::rule::{QuadratureRule, RuleDomain};
use crate::error::{Error, Result};

/// Panel layout for [`radial_rule`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    /// Halvings of the unit panel toward the origin.
    pub geometric_levels: usize,
    /// Width of the uniform panels beyond `r = 1`.
    pub panel_width: f64,
}

impl Default for RadialOptions {
    fn default() -> Self {
        Self {
            geometric_levels: 8,
            panel_width: 1.0,
        }
    }
}

/// Truncation radius `√(2(2 N_max + d + 2γ)) + 6`.
pub fn default_r_max(n_max: usize, d: usize, gamma: f64) -> f64 {
    (2.0 * (2.0 * n_max as f64 + d as f64 + 2.0 * gamma)).sqrt() + 6.0
}

/// Rule for `∫_0^{r_max} g(r) r^{d+2γ−1} dr` with `n` points per panel.
///
/// The innermost panel absorbs the power weight into a Gauss–Jacobi rule; the
/// remaining panels halve geometrically toward the origin up to `r = 1` and are
/// uniform beyond it.
pub fn radial_rule(n: usize, d: usize, gamma: f64, r_max: f64) -> Result<QuadratureRule> {
    radial_rule_with(n, d, gamma, r_max, RadialOptions::default())
}

pub fn radial_rule_with(
    n: usize,
    d: usize,
    gamma: f64,
    r_max: f64,
    opts: RadialOptions,
) -> Result<QuadratureRule> {
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::Contract(format!("radial_rule: r_max must be positive, got {r_max}")));
    }
    if n == 0 || d == 0 {
        return Err(Error::Contract("radial_rule: need n ≥ 1 and d ≥ 1".into()));
    }
    let exponent = d as f64 + 2.0 * gamma - 1.0;
    if exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "radial_rule: weight exponent d+2γ−1 = {exponent} is not integrable at 0"
        )));
    }

    let unit = r_max.min(1.0);
    let mut breaks: Vec<f64> = (0..=opts.geometric_levels)
        .rev()
        .map(|k| unit * 0.5f64.powi(k as i32))
        .collect();
    if r_max > 1.0 {
        let panels = ((r_max - 1.0) / opts.panel_width).ceil() as usize;
        let width = (r_max - 1.0) / panels as f64;
        breaks.extend((1..=panels).map(|i| 1.0 + width * i as f64));
    }

    let mut nodes = Vec::with_capacity(n * breaks.len());
    let mut weights = Vec::with_capacity(n * breaks.len());

    // Innermost panel [0, h]: r = h(1+t)/2, r^e dr = (h/2)^{e+1} (1+t)^e dt.
    let h = breaks[0];
    let inner = gauss_jacobi_cached(n, 0.0, exponent)?;
    let scale = (h / 2.0).powf(exponent + 1.0);
    for (t, w) in inner.nodes().iter().zip(inner.weights()) {
        nodes.push(h * (1.0 + t) / 2.0);
        weights.push(w * scale);
    }

    let gl = gauss_legendre(n);
    for pair in breaks.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let half = (hi - lo) / 2.0;
        for (t, w) in gl.nodes().iter().zip(gl.weights()) {
            let r = lo + half * (1.0 + t);
            nodes.push(r);
            weights.push(w * half * r.powf(exponent));
        }
    }
    Ok(QuadratureRule::new(
        nodes,
        weights,
        RuleDomain::Radial { d, gamma, r_max },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma as gamma_fn, LaguerreBasis};
    use num_complex::Complex64;

    #[test]
    fn gaussian_moment() {
        let (d, g) = (2, 0.3);
        let rule = radial_rule(16, d, g, 12.0).unwrap();
        let got = rule.integrate(|r| (-r * r).exp());
        let exact = gamma_fn(Complex64::new((d as f64 + 2.0 * g) / 2.0, 0.0)).unwrap().re / 2.0;
        assert!((got - exact).abs() < 1e-9);
    }

    #[test]
    fn laguerre_mode_has_unit_norm() {
        let (d, g, m) = (2usize, 0.25, 4usize);
        let lambda = d as f64 / 2.0 + g - 1.0;
        let basis = LaguerreBasis::new(0, Complex64::new(lambda + m as f64, 0.0)).unwrap();
        let rule = radial_rule(16, d, g, default_r_max(10, d, g)).unwrap();
        let norm = rule.integrate(|r| (r.powi(m as i32) * basis.table(r)[0].re).powi(2));
        assert!((norm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn zero_integrand() {
        let rule = radial_rule(8, 3, 0.1, 10.0).unwrap();
        assert_eq!(rule.integrate(|_| 0.0), 0.0);
    }

    #[test]
    fn mass_matches_power_integral() {
        let (d, g, r_max) = (3usize, 0.4, 9.5);
        let e = d as f64 + 2.0 * g - 1.0;
        let rule = radial_rule(12, d, g, r_max).unwrap();
        let exact = r_max.powf(e + 1.0) / (e + 1.0);
        assert!((rule.mass() - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn nodes_increase_inside_domain() {
        let rule = radial_rule(10, 2, 0.0, 7.3).unwrap();
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes()[0] > 0.0 && *rule.nodes().last().unwrap() < 7.3);
        assert!(rule.weights().iter().all(|w| *w > 0.0));
    }

    #[test]
    fn self_convergence() {
        let f = |r: f64| (r * r).cos() * (-0.5 * r * r).exp() * r.powf(0.6);
        let coarse = radial_rule(12, 2, 0.3, 14.0).unwrap().integrate(f);
        let fine = radial_rule(24, 2, 0.3, 14.0).unwrap().integrate(f);
        assert!((coarse - fine).abs() < 1e-10);
    }

    #[test]
    fn bad_radius_is_rejected() {
        assert!(radial_rule(8, 2, 0.3, 0.0).is_err());
    }
}

use std::f64::consts::PI;

const RESCALE: f64 = 1e150;

/// Normalized Hermite function `h_k(x) = (2^k k! √π)^{-1/2} H_k(x) e^{-x²/2}`.
pub fn hermite_fn_1d(k: usize, x: f64) -> f64 {
    hermite_fn_table(k, x)[k]
}

/// `[h_0(x), …, h_{kmax}(x)]`.
///
/// The recurrence runs on the polynomial part only; the Gaussian factor and
/// every rescaling live in a separate log-scale, so nothing overflows even
/// when the final value underflows to zero.
pub fn hermite_fn_table(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut log_scale = -0.5 * x * x;
    let emit = |p: f64, log_scale: f64| {
        if p == 0.0 {
            0.0
        } else {
            p.signum() * (p.abs().ln() + log_scale).exp()
        }
    };
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    out.push(emit(cur, log_scale));
    for k in 0..kmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(emit(cur, log_scale));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;

    #[test]
    fn base_case() {
        for x in [-2.0f64, 0.0, 0.7, 3.1] {
            let expect = PI.powf(-0.25) * (-0.5 * x * x).exp();
            assert!((hermite_fn_1d(0, x) - expect).abs() < 1e-16);
        }
    }

    #[test]
    fn parity() {
        let a = hermite_fn_1d(7, 1.3);
        let b = hermite_fn_1d(7, -1.3);
        assert!((a + b).abs() < 1e-16);
    }

    #[test]
    fn orthonormal_by_quadrature() {
        // Composite Gauss–Legendre on [-12, 12].
        let gl = gauss_legendre(24);
        let mut gram = vec![[0.0f64; 21]; 21];
        for panel in 0..48 {
            let lo = -12.0 + 0.5 * panel as f64;
            for (t, w) in gl.nodes().iter().zip(gl.weights()) {
                let x = lo + 0.25 * (t + 1.0);
                let h = hermite_fn_table(20, x);
                for j in 0..=20 {
                    for k in 0..=20 {
                        gram[j][k] += 0.25 * w * h[j] * h[k];
                    }
                }
            }
        }
        for j in 0..=20 {
            for k in 0..=20 {
                let target = if j == k { 1.0 } else { 0.0 };
                assert!((gram[j][k] - target).abs() < 1e-10, "({j},{k}) -> {}", gram[j][k]);
            }
        }
    }

    #[test]
    fn large_order_and_argument_stay_finite() {
        for x in [-40.0, -20.0, 0.0, 15.0, 40.0] {
            let t = hermite_fn_table(220, x);
            assert!(t.iter().all(|v| v.is_finite()));
        }
        // Plancherel–Rotach scale: |h_k| ≤ π^{-1/4} everywhere.
        let t = hermite_fn_table(200, 19.5);
        assert!(t.iter().all(|v| v.abs() <= PI.powf(-0.25) + 1e-12));
        assert!(t[200].abs() > 1e-3);
    }
}

use super::ComplexScalar;

/// The shifted order pair attached to a point ζ of the complex strip:
/// `δ(ζ) = (d−1)/2 + ζ` and `λ(ζ) = d/2 + ζ − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParams {
    pub delta: ComplexScalar,
    pub lambda: ComplexScalar,
    pub d: usize,
    pub gamma: f64,
}

impl OrderParams {
    pub fn new(d: usize, gamma: f64, zeta: ComplexScalar) -> Self {
        let lambda = zeta + (d as f64 / 2.0 - 1.0);
        Self {
            delta: lambda + 0.5,
            lambda,
            d,
            gamma,
        }
    }

    /// Orders at the real point `ζ = γ`.
    pub fn at_gamma(d: usize, gamma: f64) -> Self {
        Self::new(d, gamma, ComplexScalar::new(gamma, 0.0))
    }

    pub fn critical_index(&self) -> f64 {
        critical_index(self.d, self.gamma)
    }
}

/// `(d + 2γ − 1)/2`, the Cesàro order threshold.
pub fn critical_index(d: usize, gamma: f64) -> f64 {
    (d as f64 + 2.0 * gamma - 1.0) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_minus_lambda_is_half() {
        for d in 2..6 {
            let p = OrderParams::new(d, 0.3, ComplexScalar::new(0.2, -1.5));
            assert!((p.delta - p.lambda - 0.5).norm() < 1e-15);
        }
    }

    #[test]
    fn critical_index_matches_delta_at_gamma() {
        let p = OrderParams::at_gamma(3, 0.25);
        assert!((p.delta.re - p.critical_index()).abs() < 1e-15);
    }
}

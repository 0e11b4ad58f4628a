use super::{is_nonpositive_integer, log_gamma, rgamma, ComplexScalar};

const REL_STOP: f64 = 1e-16;
const QUIET_TERMS: usize = 50;
const MAX_TERMS: usize = 500;
const RESCALE: f64 = 1e200;

/// Modified Bessel function of the first kind `I_ν(z)`, principal branch of `(z/2)^ν`.
///
/// `I_ν(0)` is 1 for ν = 0, 0 for Re ν > 0 or ν a negative integer, and
/// infinite otherwise.
pub fn bessel_i(nu: ComplexScalar, z: ComplexScalar) -> ComplexScalar {
    if is_nonpositive_integer(nu) && nu.re < 0.0 {
        // I_{−n} = I_n
        return bessel_i(-nu, z);
    }
    let zero = ComplexScalar::new(0.0, 0.0);
    if z == zero {
        return if nu == zero {
            ComplexScalar::new(1.0, 0.0)
        } else if nu.re > 0.0 {
            zero
        } else {
            ComplexScalar::new(f64::INFINITY, 0.0)
        };
    }
    let (sum, log_scale) = reduced_series(nu, z);
    if sum == zero {
        return zero;
    }
    (sum.ln() + log_scale + nu * (z / 2.0).ln()).exp()
}

/// `I_ν(z) / (z/2)^ν = Σ_k (z²/4)^k / (k! Γ(k+ν+1))`, entire in `z` and free of branch choices.
pub fn bessel_i_reduced(nu: ComplexScalar, z: ComplexScalar) -> ComplexScalar {
    let (sum, log_scale) = reduced_series(nu, z);
    if log_scale == 0.0 || sum == ComplexScalar::new(0.0, 0.0) {
        sum
    } else {
        (sum.ln() + log_scale).exp()
    }
}

// Returns (s, L) with the series equal to s · e^L. For |z| ≤ 30 no rescaling happens.
fn reduced_series(nu: ComplexScalar, z: ComplexScalar) -> (ComplexScalar, f64) {
    let q = z * z / 4.0;
    // First index where 1/Γ(k+ν+1) is nonzero.
    let mut k0 = 0usize;
    while is_nonpositive_integer(nu + (k0 as f64) + 1.0) {
        k0 += 1;
    }
    let mut log_scale = 0.0;
    let mut term = if k0 == 0 {
        rgamma(nu + 1.0)
    } else {
        let lt = q.ln() * k0 as f64
            - log_gamma(ComplexScalar::new(k0 as f64 + 1.0, 0.0)).expect("positive argument")
            - log_gamma(nu + (k0 as f64) + 1.0).expect("k0 chosen past the poles");
        lt.exp()
    };
    let scaled = z.norm() > 30.0;
    let mut sum = term;
    let mut quiet = 0usize;
    let mut k = k0;
    for _ in 0..MAX_TERMS {
        k += 1;
        term *= q / ((k as f64) * (nu + k as f64));
        sum += term;
        if scaled && sum.norm() > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            log_scale += RESCALE.ln();
        }
        if term.norm() < REL_STOP * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (sum, log_scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_jacobi;
    use crate::specfun::gamma;
    use std::f64::consts::PI;

    fn cx(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_i(cx(0.0, 0.0), cx(0.0, 0.0)), cx(1.0, 0.0));
        assert_eq!(bessel_i(cx(1.3, 0.2), cx(0.0, 0.0)), cx(0.0, 0.0));
    }

    #[test]
    fn half_order_closed_form() {
        for z in [cx(1.4, 0.0), cx(0.3, 2.0), cx(-1.0, 0.5)] {
            let exact = (2.0 / (PI * z)).sqrt() * z.sinh();
            let got = bessel_i(cx(0.5, 0.0), z);
            assert!((got - exact).norm() < 1e-12 * exact.norm(), "z = {z}");
        }
    }

    #[test]
    fn poisson_integral_order_three_halves() {
        // I_ν(z) = (z/2)^ν / (√π Γ(ν+1/2)) ∫ e^{zu} (1−u²)^{ν−1/2} du
        let nu = 1.5;
        let z: f64 = 2.0;
        let rule = gauss_jacobi(40, nu - 0.5, nu - 0.5).unwrap();
        let integral = rule.integrate(|u| (z * u).exp());
        let via_integral =
            (z / 2.0).powf(nu) / (PI.sqrt() * gamma(cx(nu + 0.5, 0.0)).unwrap().re) * integral;
        let got = bessel_i(cx(nu, 0.0), cx(z, 0.0));
        assert!((got.re - via_integral).abs() < 1e-10);
    }

    #[test]
    fn negative_integer_order_symmetry() {
        let z = cx(0.7, -0.4);
        assert!((bessel_i(cx(-3.0, 0.0), z) - bessel_i(cx(3.0, 0.0), z)).norm() < 1e-15);
    }

    #[test]
    fn large_argument_uses_scaled_sum() {
        // I_{1/2}(x) = √(2/(πx)) sinh x, far past the rescaling threshold.
        let x = 300.0;
        let got = bessel_i(cx(0.5, 0.0), cx(x, 0.0));
        let exact_log = 0.5 * (2.0 / (PI * x)).ln() + x - (2.0f64).ln();
        assert!((got.re.ln() - exact_log).abs() < 1e-12);
    }

    #[test]
    fn reduced_matches_ratio() {
        let nu = cx(1.2, 0.7);
        let z = cx(1.5, 0.9);
        let a = bessel_i_reduced(nu, z);
        let b = bessel_i(nu, z) / (z / 2.0).powc(nu);
        assert!((a - b).norm() < 1e-13 * b.norm());
    }

    #[test]
    fn recurrence_in_order() {
        // I_{ν−1} − I_{ν+1} = (2ν/z) I_ν
        let nu = cx(2.3, -0.4);
        let z = cx(3.0, 1.0);
        let lhs = bessel_i(nu - 1.0, z) - bessel_i(nu + 1.0, z);
        let rhs = nu * 2.0 / z * bessel_i(nu, z);
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }
}

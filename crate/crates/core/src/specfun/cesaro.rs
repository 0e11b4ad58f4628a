use super::ComplexScalar;
use crate::error::{domain, Result};

/// Cesàro coefficient `A_j^δ = Γ(j+δ+1) / (Γ(j+1) Γ(δ+1))`.
///
/// Evaluated as the product `∏_{k=1}^{j} (δ+k)/k`.
///
/// # Errors
/// [`crate::Error::Domain`] when `δ + k = 0` for some `1 ≤ k ≤ j`.
pub fn cesaro_coeff(j: usize, delta: ComplexScalar) -> Result<ComplexScalar> {
    let mut acc = ComplexScalar::new(1.0, 0.0);
    for k in 1..=j {
        let num = delta + k as f64;
        if num == ComplexScalar::new(0.0, 0.0) {
            return Err(domain(format!(
                "cesaro_coeff: delta = {delta} makes Gamma(delta+1) singular (delta + {k} = 0)"
            )));
        }
        acc *= num / k as f64;
    }
    Ok(acc)
}

/// `[A_0^δ, …, A_{jmax}^δ]`.
pub fn cesaro_coeffs(jmax: usize, delta: ComplexScalar) -> Result<Vec<ComplexScalar>> {
    let mut out = Vec::with_capacity(jmax + 1);
    let mut acc = ComplexScalar::new(1.0, 0.0);
    out.push(acc);
    for k in 1..=jmax {
        let num = delta + k as f64;
        if num == ComplexScalar::new(0.0, 0.0) {
            return Err(domain(format!(
                "cesaro_coeffs: delta = {delta} makes Gamma(delta+1) singular (delta + {k} = 0)"
            )));
        }
        acc *= num / k as f64;
        out.push(acc);
    }
    Ok(out)
}

/// Generalized binomial coefficient `binom(a, n) = a (a−1) ⋯ (a−n+1) / n!`, entire in `a`.
pub fn binomial(a: ComplexScalar, n: usize) -> ComplexScalar {
    let mut acc = ComplexScalar::new(1.0, 0.0);
    for k in 1..=n {
        acc *= (a - (k - 1) as f64) / k as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;
    use proptest::prelude::*;

    fn via_log_gamma(j: usize, delta: ComplexScalar) -> ComplexScalar {
        let one = ComplexScalar::new(1.0, 0.0);
        (log_gamma(delta + (j as f64) + one).unwrap()
            - log_gamma(ComplexScalar::new(j as f64 + 1.0, 0.0)).unwrap()
            - log_gamma(delta + one).unwrap())
        .exp()
    }

    #[test]
    fn small_cases() {
        let any = ComplexScalar::new(-0.3, 4.0);
        assert_eq!(cesaro_coeff(0, any).unwrap(), ComplexScalar::new(1.0, 0.0));
        assert_eq!(cesaro_coeff(2, ComplexScalar::new(1.0, 0.0)).unwrap().re, 3.0);
    }

    #[test]
    fn complex_order_matches_log_gamma() {
        let delta = ComplexScalar::new(0.75, 1.2);
        let a = cesaro_coeff(5, delta).unwrap();
        let b = via_log_gamma(5, delta);
        assert!((a - b).norm() <= 1e-12 * b.norm());
    }

    #[test]
    fn pole_is_reported() {
        assert!(cesaro_coeff(3, ComplexScalar::new(-2.0, 0.0)).is_err());
        assert!(cesaro_coeff(1, ComplexScalar::new(-2.0, 0.0)).is_ok());
    }

    #[test]
    fn binomial_reflects_cesaro() {
        // binom(a, n) = (−1)^n A_n^{−a−1}
        let a = ComplexScalar::new(0.25, -0.7);
        for n in 0..12 {
            let lhs = binomial(a, n);
            let rhs = cesaro_coeff(n, -a - 1.0).unwrap() * if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn table_agrees_with_pointwise(re in 0.0f64..4.0, im in -3.0f64..3.0, j in 0usize..40) {
            let delta = ComplexScalar::new(re, im);
            let table = cesaro_coeffs(j, delta).unwrap();
            prop_assert_eq!(table[j], cesaro_coeff(j, delta).unwrap());
        }

        #[test]
        fn pascal_rule(re in -0.9f64..4.0, im in -3.0f64..3.0, j in 1usize..60) {
            // A_j^δ = A_j^{δ−1} + A_{j−1}^δ
            let delta = ComplexScalar::new(re, im);
            let lhs = cesaro_coeff(j, delta).unwrap();
            let rhs = cesaro_coeff(j, delta - 1.0).unwrap() + cesaro_coeff(j - 1, delta).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-11 * (1.0 + lhs.norm()));
        }
    }
}

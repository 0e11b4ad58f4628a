use super::{is_nonpositive_integer, ComplexScalar};
use crate::error::{domain, Result};
use std::f64::consts::PI;

// Arguments are shifted up to this real part before the asymptotic series is applied.
const SHIFT_TARGET: f64 = 12.0;

// B_{2k} / (2k (2k - 1)), k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Principal branch of `ln Γ(z)`.
///
/// Uses upward recurrence `ln Γ(z) = ln Γ(z+n) − Σ ln(z+k)` followed by the
/// Stirling series. Each logarithm is principal, so the result is analytic off
/// the negative real axis and real on the positive axis.
///
/// # Errors
/// Poles (`z = 0, −1, −2, …`) and non-finite input give [`crate::Error::Domain`].
pub fn log_gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!("log_gamma: non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(domain(format!("log_gamma: pole of Gamma at z = {}", z.re)));
    }
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re <= 19.0 {
        // ln((n−1)!) with the factorial exact in f64
        let n = z.re as u32;
        let fact: f64 = (1..n).map(f64::from).product();
        return Ok(ComplexScalar::new(fact.ln(), 0.0));
    }
    let mut w = z;
    let mut shift = ComplexScalar::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: ComplexScalar) -> ComplexScalar {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = ComplexScalar::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series
}

/// `Γ(z)`; errors at poles.
pub fn gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    log_gamma(z).map(|l| l.exp())
}

/// `1/Γ(z)`, the entire reciprocal; exactly zero at the poles of Γ.
pub fn rgamma(z: ComplexScalar) -> ComplexScalar {
    if is_nonpositive_integer(z) {
        return ComplexScalar::new(0.0, 0.0);
    }
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => ComplexScalar::new(f64::NAN, f64::NAN),
    }
}

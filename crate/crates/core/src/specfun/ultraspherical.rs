use super::ComplexScalar;
use crate::error::{domain, Result};

/// Normalized ultraspherical polynomial `P_m^λ = C_m^λ / C_m^λ(1)`, with its derivative.
///
/// Built from the cosine expansion
/// `C_m^λ(cos θ) = Σ_k (λ)_k (λ)_{m−k} / (k! (m−k)!) cos((m−2k)θ)`,
/// with one factor of λ cancelled between numerator and normalizer. At λ = 0 this
/// gives the Chebyshev limit `P_m^0 = T_m`.
#[derive(Debug, Clone)]
pub struct Ultraspherical {
    m: usize,
    lambda: ComplexScalar,
    // Coefficient of T_{|m−2k|}(u), already divided by the normalizer.
    coefs: Vec<ComplexScalar>,
    deriv: Option<Box<Ultraspherical>>,
    deriv_factor: ComplexScalar,
}

impl Ultraspherical {
    /// # Errors
    /// [`crate::Error::Domain`] for `Re λ ≤ −1/2` or a vanishing normalizer.
    pub fn new(m: usize, lambda: ComplexScalar) -> Result<Self> {
        let mut poly = Self::values_only(m, lambda)?;
        if m > 0 {
            let next = Self::values_only(m - 1, lambda + 1.0)?;
            poly.deriv_factor = (m as f64) * (lambda * 2.0 + m as f64) / (lambda * 2.0 + 1.0);
            poly.deriv = Some(Box::new(next));
        }
        Ok(poly)
    }

    fn values_only(m: usize, lambda: ComplexScalar) -> Result<Self> {
        if lambda.re <= -0.5 {
            return Err(domain(format!(
                "ultraspherical: Re(lambda) must exceed -1/2, got lambda = {lambda}"
            )));
        }
        let zero = ComplexScalar::new(0.0, 0.0);
        let coefs = if m == 0 {
            vec![ComplexScalar::new(1.0, 0.0)]
        } else {
            // a[k] = (λ+1)_{k−1} / k!  for k ≥ 1
            let mut a = vec![zero; m + 1];
            a[0] = ComplexScalar::new(1.0, 0.0);
            let mut poch = ComplexScalar::new(1.0, 0.0);
            let mut fact = 1.0;
            for k in 1..=m {
                if k >= 2 {
                    poch *= lambda + (k - 1) as f64;
                }
                fact *= k as f64;
                a[k] = poch / fact;
            }
            // normalizer / λ = 2 (2λ+1)_{m−1} / m!
            let mut norm = ComplexScalar::new(2.0, 0.0);
            for i in 0..m - 1 {
                norm *= (lambda * 2.0 + 1.0 + i as f64) / (i + 1) as f64;
            }
            norm /= m as f64;
            if norm.norm() == 0.0 || !norm.re.is_finite() {
                return Err(domain(format!(
                    "ultraspherical: normalizer C_{m}^lambda(1) vanishes at lambda = {lambda}"
                )));
            }
            (0..=m)
                .map(|k| {
                    let c = if k == 0 || k == m {
                        a[m]
                    } else {
                        lambda * a[k] * a[m - k]
                    };
                    c / norm
                })
                .collect()
        };
        Ok(Self {
            m,
            lambda,
            coefs,
            deriv: None,
            deriv_factor: zero,
        })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> ComplexScalar {
        self.lambda
    }

    /// `P_m^λ(u)` for `u ∈ [−1, 1]`.
    pub fn eval(&self, u: f64) -> ComplexScalar {
        let m = self.m;
        let cheb = chebyshev_table(m, u);
        self.coefs
            .iter()
            .enumerate()
            .map(|(k, c)| c * cheb[(m as isize - 2 * k as isize).unsigned_abs()])
            .sum()
    }

    /// `d/du P_m^λ(u) = m(m+2λ)/(2λ+1) · P_{m−1}^{λ+1}(u)`.
    pub fn eval_deriv(&self, u: f64) -> ComplexScalar {
        match &self.deriv {
            Some(next) => self.deriv_factor * next.eval(u),
            None => ComplexScalar::new(0.0, 0.0),
        }
    }
}

fn chebyshev_table(n: usize, u: f64) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(1.0);
    if n >= 1 {
        t.push(u);
    }
    for k in 2..=n {
        t.push(2.0 * u * t[k - 1] - t[k - 2]);
    }
    t
}

/// `P_m^λ(u)`; see [`Ultraspherical`].
pub fn ultraspherical(m: usize, lambda: ComplexScalar, u: f64) -> Result<ComplexScalar> {
    Ok(Ultraspherical::values_only(m, lambda)?.eval(u))
}

/// `d/du P_m^λ(u)`.
pub fn ultraspherical_deriv(m: usize, lambda: ComplexScalar, u: f64) -> Result<ComplexScalar> {
    Ok(Ultraspherical::new(m, lambda)?.eval_deriv(u))
}

use super::samples::{radial_params, weighted_lp, CoefficientFamily, RadialSamples};
use crate::error::{Error, Result};
use crate::kernels::LaguerreKernel;
use crate::quadrature::QuadratureRule;
use crate::specfun::ComplexScalar;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A factored kernel `Σ_k c_k φ_k(r) φ_k(s)` tabulated on the nodes of a rule.
#[derive(Debug, Clone)]
pub(crate) struct ModeTable {
    pub coeffs: Vec<ComplexScalar>,
    /// `modes[k][i] = φ_k(r_i)`.
    pub modes: Vec<Vec<ComplexScalar>>,
}

impl ModeTable {
    pub fn new(kernel: &LaguerreKernel, nodes: &[f64]) -> Self {
        let coeffs = kernel.coefficients().to_vec();
        let mut modes = vec![Vec::with_capacity(nodes.len()); coeffs.len()];
        for &r in nodes {
            for (col, v) in modes.iter_mut().zip(kernel.modes(r)) {
                col.push(v);
            }
        }
        Self { coeffs, modes }
    }

    /// `Σ_i w_i φ_k(r_i) f_i` for every `k`.
    pub fn project(&self, weights: &[f64], f: &[ComplexScalar]) -> Vec<ComplexScalar> {
        self.modes
            .iter()
            .map(|col| col.iter().zip(weights).zip(f).map(|((p, w), v)| p * v * *w).sum())
            .collect()
    }

    /// `Σ_k c_k a_k φ_k(r_i)` at every node.
    pub fn synthesize(&self, amplitudes: &[ComplexScalar], len: usize) -> Vec<ComplexScalar> {
        let mut out = vec![ComplexScalar::new(0.0, 0.0); len];
        for ((c, a), col) in self.coeffs.iter().zip(amplitudes).zip(&self.modes) {
            let ca = c * a;
            for (o, p) in out.iter_mut().zip(col) {
                *o += ca * p;
            }
        }
        out
    }

    pub fn apply(&self, weights: &[f64], f: &[ComplexScalar]) -> Vec<ComplexScalar> {
        self.synthesize(&self.project(weights, f), f.len())
    }
}

fn check_rule(rule: &QuadratureRule, d: usize, gamma: f64) -> Result<()> {
    let (rd, rg) = radial_params(rule)?;
    if rd != d || rg != gamma {
        return Err(Error::Contract(format!(
            "radial rule is built for (d, γ) = ({rd}, {rg}), operator needs ({d}, {gamma})"
        )));
    }
    Ok(())
}

fn real_kernel(n: usize, m: usize, delta: f64, gamma: f64, d: usize) -> Result<LaguerreKernel> {
    LaguerreKernel::new(
        n,
        m,
        ComplexScalar::new(delta, 0.0),
        ComplexScalar::new(gamma, 0.0),
        d,
    )
}

/// `T_{N,m}^{δ,γ} f(r) = ∫ K_{N,m}^{δ,γ}(r, s) f(s) s^{d+2γ−1} ds` at the nodes of `f`'s rule.
///
/// # Errors
/// [`Error::Contract`] when the rule was not built for `(d, γ)`.
pub fn apply_t(n: usize, m: usize, delta: f64, gamma: f64, d: usize, f: &RadialSamples) -> Result<RadialSamples> {
    let rule = f.rule();
    check_rule(rule, d, gamma)?;
    let table = ModeTable::new(&real_kernel(n, m, delta, gamma, d)?, rule.nodes());
    RadialSamples::new(rule.clone(), table.apply(rule.weights(), f.values()))
}

/// Applies `T_{N,m}` to every entry `f_{m,j}` with its own `m`.
pub fn vector_apply(n: usize, delta: f64, gamma: f64, d: usize, family: &CoefficientFamily) -> Result<CoefficientFamily> {
    let rule = family.rule();
    check_rule(rule, d, gamma)?;
    let mut degrees: Vec<usize> = family.iter().map(|(&(m, _), _)| m).collect();
    degrees.dedup();
    let tables: BTreeMap<usize, ModeTable> = degrees
        .par_iter()
        .map(|&m| Ok((m, ModeTable::new(&real_kernel(n, m, delta, gamma, d)?, rule.nodes()))))
        .collect::<Result<_>>()?;
    let entries = family
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(&(m, j), f)| {
            let values = tables[&m].apply(rule.weights(), f.values());
            Ok(((m, j), RadialSamples::new(rule.clone(), values)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CoefficientFamily::from_parts(rule.clone(), entries, family.dim_hint().cloned()))
}

/// `‖(Σ_{m,j} |f_{m,j}(r)|²)^{1/2}‖_{L^p(r^{d+2γ−1} dr)}`.
///
/// # Errors
/// [`Error::Contract`] for an empty family or a rule built for other `(d, γ)`;
/// [`Error::Domain`] for `p < 1`.
pub fn mixed_norm(family: &CoefficientFamily, p: f64, d: usize, gamma: f64) -> Result<f64> {
    if family.is_empty() {
        return Err(Error::Contract("mixed norm of an empty family".into()));
    }
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("mixed norm: p must be at least 1, got {p}")));
    }
    let rule = family.rule();
    check_rule(rule, d, gamma)?;
    Ok(weighted_lp(rule.weights(), square_function(family).into_iter(), p))
}

/// `(Σ_{m,j} |f_{m,j}(r_i)|²)^{1/2}` at every node.
pub(crate) fn square_function(family: &CoefficientFamily) -> Vec<f64> {
    let mut acc = vec![0.0; family.rule().len()];
    for (_, f) in family.iter() {
        for (a, v) in acc.iter_mut().zip(f.values()) {
            *a += v.norm_sqr();
        }
    }
    acc.into_iter().map(f64::sqrt).collect()
}

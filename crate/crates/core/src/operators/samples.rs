use crate::error::{Error, Result};
use crate::quadrature::{default_r_max, radial_rule, QuadratureRule, RuleDomain};
use crate::specfun::{ComplexScalar, LaguerreBasis};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Points per panel used by [`default_radial_rule`] for degrees up to `n_max`.
pub fn default_points_per_panel(n_max: usize) -> usize {
    20 + n_max / 2
}

/// Radial rule resolving every Laguerre mode of degree `≤ n_max` in `L²(r^{d+2γ−1} dr)`.
pub fn default_radial_rule(n_max: usize, d: usize, gamma: f64) -> Result<Arc<QuadratureRule>> {
    let rule = radial_rule(default_points_per_panel(n_max), d, gamma, default_r_max(n_max, d, gamma))?;
    Ok(Arc::new(rule))
}

pub(crate) fn radial_params(rule: &QuadratureRule) -> Result<(usize, f64)> {
    match rule.domain() {
        RuleDomain::Radial { d, gamma, .. } => Ok((d, gamma)),
        other => Err(Error::Contract(format!("expected a radial rule, got {other:?}"))),
    }
}

/// A radial function sampled at the nodes of a radial rule.
#[derive(Debug, Clone)]
pub struct RadialSamples {
    rule: Arc<QuadratureRule>,
    values: Vec<ComplexScalar>,
}

impl RadialSamples {
    /// # Errors
    /// [`Error::Contract`] when the length differs from the node count, a value
    /// is not finite, or the rule is not radial.
    pub fn new(rule: Arc<QuadratureRule>, values: Vec<ComplexScalar>) -> Result<Self> {
        radial_params(&rule)?;
        if values.len() != rule.len() {
            return Err(Error::Contract(format!(
                "radial samples: {} values for {} nodes",
                values.len(),
                rule.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Contract(format!("radial samples: non-finite value at node {i}")));
        }
        Ok(Self { rule, values })
    }

    pub fn from_fn<F: Fn(f64) -> ComplexScalar>(rule: Arc<QuadratureRule>, f: F) -> Result<Self> {
        let values = rule.nodes().iter().map(|&r| f(r)).collect();
        Self::new(rule, values)
    }

    pub fn from_real_fn<F: Fn(f64) -> f64>(rule: Arc<QuadratureRule>, f: F) -> Result<Self> {
        Self::from_fn(rule, |r| ComplexScalar::new(f(r), 0.0))
    }

    pub fn zeros(rule: Arc<QuadratureRule>) -> Result<Self> {
        let n = rule.len();
        Self::new(rule, vec![ComplexScalar::new(0.0, 0.0); n])
    }

    pub fn rule(&self) -> &Arc<QuadratureRule> {
        &self.rule
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    pub fn nodes(&self) -> &[f64] {
        self.rule.nodes()
    }

    pub fn shares_rule(&self, other: &QuadratureRule) -> bool {
        std::ptr::eq(self.rule.as_ref(), other) || *self.rule == *other
    }

    pub fn scaled(&self, c: ComplexScalar) -> Self {
        Self {
            rule: self.rule.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: ComplexScalar, other: &Self, b: ComplexScalar) -> Result<Self> {
        if !self.shares_rule(&other.rule) {
            return Err(Error::Contract("radial samples: rules differ".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(Self {
            rule: self.rule.clone(),
            values,
        })
    }

    /// `(∫ |f|^p r^{d+2γ−1} dr)^{1/p}` on the rule.
    pub fn lp_norm(&self, p: f64) -> f64 {
        weighted_lp(self.rule.weights(), self.values.iter().map(|v| v.norm()), p)
    }
}

pub(crate) fn weighted_lp<I: Iterator<Item = f64>>(weights: &[f64], moduli: I, p: f64) -> f64 {
    if p.is_infinite() {
        return moduli.fold(0.0, f64::max);
    }
    let sum: f64 = weights.iter().zip(moduli).map(|(w, a)| w * a.powf(p)).sum();
    sum.powf(1.0 / p)
}

/// The mode `r^m ψ_k^{λ+m}(r)` with `λ = d/2 + γ − 1` taken from the rule.
pub fn laguerre_mode(rule: Arc<QuadratureRule>, m: usize, k: usize) -> Result<RadialSamples> {
    let (d, gamma) = radial_params(&rule)?;
    let lambda = d as f64 / 2.0 + gamma - 1.0;
    let basis = LaguerreBasis::new(k, ComplexScalar::new(lambda + m as f64, 0.0))?;
    RadialSamples::from_fn(rule, |r| basis.table(r)[k] * r.powi(m as i32))
}

/// Radial coefficients `f_{m,j}` indexed by degree `m ≥ 0` and `1 ≤ j ≤ d(m)`.
#[derive(Debug, Clone)]
pub struct CoefficientFamily {
    rule: Arc<QuadratureRule>,
    entries: BTreeMap<(usize, usize), RadialSamples>,
    dim_hint: Option<BTreeMap<usize, usize>>,
}

impl CoefficientFamily {
    pub fn new(rule: Arc<QuadratureRule>) -> Result<Self> {
        radial_params(&rule)?;
        Ok(Self {
            rule,
            entries: BTreeMap::new(),
            dim_hint: None,
        })
    }

    /// Attaches the harmonic-space dimensions `m ↦ d(m)`; existing entries must fit.
    pub fn with_dim_hint(mut self, hint: BTreeMap<usize, usize>) -> Result<Self> {
        for &(m, j) in self.entries.keys() {
            check_index(Some(&hint), m, j)?;
        }
        self.dim_hint = Some(hint);
        Ok(self)
    }

    pub fn dim_hint(&self) -> Option<&BTreeMap<usize, usize>> {
        self.dim_hint.as_ref()
    }

    /// # Errors
    /// [`Error::Contract`] for `j = 0`, `j > d(m)`, or samples on another rule.
    pub fn insert(&mut self, m: usize, j: usize, f: RadialSamples) -> Result<()> {
        check_index(self.dim_hint.as_ref(), m, j)?;
        if !f.shares_rule(&self.rule) {
            return Err(Error::Contract(format!("family entry ({m},{j}) uses a different rule")));
        }
        self.entries.insert((m, j), f);
        Ok(())
    }

    pub fn with(mut self, m: usize, j: usize, f: RadialSamples) -> Result<Self> {
        self.insert(m, j, f)?;
        Ok(self)
    }

    pub fn rule(&self) -> &Arc<QuadratureRule> {
        &self.rule
    }

    pub fn get(&self, m: usize, j: usize) -> Option<&RadialSamples> {
        self.entries.get(&(m, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &RadialSamples)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, c: ComplexScalar) -> Self {
        Self {
            rule: self.rule.clone(),
            entries: self.entries.iter().map(|(k, v)| (*k, v.scaled(c))).collect(),
            dim_hint: self.dim_hint.clone(),
        }
    }

    /// Entry-wise `self − other`, treating missing entries as zero.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !std::ptr::eq(self.rule.as_ref(), other.rule.as_ref()) && *self.rule != *other.rule {
            return Err(Error::Contract("family difference: rules differ".into()));
        }
        let one = ComplexScalar::new(1.0, 0.0);
        let mut entries = self.entries.clone();
        for (key, g) in &other.entries {
            let diff = match entries.get(key) {
                Some(f) => f.combine(one, g, -one)?,
                None => g.scaled(-one),
            };
            entries.insert(*key, diff);
        }
        Ok(Self {
            rule: self.rule.clone(),
            entries,
            dim_hint: self.dim_hint.clone(),
        })
    }

    pub(crate) fn from_parts(
        rule: Arc<QuadratureRule>,
        entries: BTreeMap<(usize, usize), RadialSamples>,
        dim_hint: Option<BTreeMap<usize, usize>>,
    ) -> Self {
        Self {
            rule,
            entries,
            dim_hint,
        }
    }
}

fn check_index(hint: Option<&BTreeMap<usize, usize>>, m: usize, j: usize) -> Result<()> {
    if j == 0 {
        return Err(Error::Contract(format!("family index ({m},{j}): j starts at 1")));
    }
    if let Some(dm) = hint.and_then(|h| h.get(&m)) {
        if j > *dm {
            return Err(Error::Contract(format!("family index ({m},{j}) exceeds d(m) = {dm}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule() -> Arc<QuadratureRule> {
        default_radial_rule(10, 2, 0.3).unwrap()
    }

    #[test]
    fn length_and_finiteness_are_checked() {
        let r = rule();
        assert!(RadialSamples::new(r.clone(), vec![ComplexScalar::new(0.0, 0.0); 3]).is_err());
        let mut v = vec![ComplexScalar::new(1.0, 0.0); r.len()];
        v[2] = ComplexScalar::new(f64::NAN, 0.0);
        assert!(RadialSamples::new(r, v).is_err());
    }

    #[test]
    fn modes_are_orthonormal() {
        let r = rule();
        let a = laguerre_mode(r.clone(), 3, 2).unwrap();
        let b = laguerre_mode(r.clone(), 3, 4).unwrap();
        let ip = |x: &RadialSamples, y: &RadialSamples| -> ComplexScalar {
            x.values().iter().zip(y.values()).zip(r.weights()).map(|((u, v), w)| u * v * *w).sum()
        };
        assert!((ip(&a, &a).re - 1.0).abs() < 1e-12);
        assert!(ip(&a, &b).norm() < 1e-12);
    }

    #[test]
    fn dim_hint_bounds_j() {
        let r = rule();
        let f = RadialSamples::zeros(r.clone()).unwrap();
        let hint = BTreeMap::from([(0, 1), (1, 2)]);
        let mut fam = CoefficientFamily::new(r).unwrap().with_dim_hint(hint).unwrap();
        assert!(fam.insert(1, 2, f.clone()).is_ok());
        assert!(fam.insert(1, 3, f.clone()).is_err());
        assert!(fam.insert(0, 0, f).is_err());
    }

    #[test]
    fn foreign_rule_is_rejected() {
        let other = default_radial_rule(12, 2, 0.3).unwrap();
        let f = RadialSamples::zeros(other).unwrap();
        assert!(CoefficientFamily::new(rule()).unwrap().insert(0, 1, f).is_err());
    }

    #[test]
    fn difference_covers_both_key_sets() {
        let r = rule();
        let f = laguerre_mode(r.clone(), 0, 0).unwrap();
        let a = CoefficientFamily::new(r.clone()).unwrap().with(0, 1, f.clone()).unwrap();
        let b = CoefficientFamily::new(r).unwrap().with(1, 1, f).unwrap();
        let d = a.sub(&b).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(1, 1).unwrap().values()[0], -b.get(1, 1).unwrap().values()[0]);
    }
}

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul};

/// Where a rule lives and which weight it absorbs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RuleDomain {
    /// `[−1, 1]` with weight `(1−u)^a (1+u)^b`.
    Jacobi { a: f64, b: f64 },
    /// `[0, r_max]` with weight `r^{d+2γ−1}`.
    Radial { d: usize, gamma: f64, r_max: f64 },
}

impl RuleDomain {
    /// Exponent of the radial weight, `d + 2γ − 1`.
    pub fn radial_exponent(&self) -> Option<f64> {
        match *self {
            RuleDomain::Radial { d, gamma, .. } => Some(d as f64 + 2.0 * gamma - 1.0),
            RuleDomain::Jacobi { .. } => None,
        }
    }
}

/// Immutable nodes and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: RuleDomain,
}

impl QuadratureRule {
    pub(crate) fn new(nodes: Vec<f64>, weights: Vec<f64>, domain: RuleDomain) -> Self {
        debug_assert_eq!(nodes.len(), weights.len());
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(weights.iter().all(|w| *w > 0.0));
        Self {
            nodes,
            weights,
            domain,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> RuleDomain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate<T, F>(&self, f: F) -> T
    where
        F: Fn(f64) -> T,
        T: Default + Add<Output = T> + Mul<f64, Output = T>,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&x, &w)| acc + f(x) * w)
    }

    /// Total weight mass.
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

use super::samples::{radial_params, RadialSamples};
use crate::error::{Error, Result};
use crate::kernels::{KernelPoint, ProjectionKernel, DEFAULT_MAX_DEGREE};
use crate::quadrature::gauss_legendre;
use crate::specfun::{cesaro_coeffs, ComplexScalar};
use rayon::prelude::*;
use std::f64::consts::PI;

const NODES_PER_CELL: usize = 8;

/// `∫_{−1}^{1} |σ_N^δ(r, s; u)| (1−u²)^{(d−3)/2} du` for every `N ≤ n_max`.
///
/// In `u = cos θ` the weight becomes `sin^{d−2} θ dθ`. The θ-interval is cut
/// into uniform cells; for real `δ` each cell is further split at the sign
/// changes of `σ_N` so that every Gauss panel sees a smooth integrand.
pub(crate) struct AngularAbsIntegral {
    d: usize,
    n_max: usize,
    real_order: bool,
    /// `ratios[N][j] = A_{N−j}^δ / A_N^δ`.
    ratios: Vec<Vec<ComplexScalar>>,
    proj: ProjectionKernel,
    cells: usize,
}

impl AngularAbsIntegral {
    pub fn new(n_max: usize, delta: ComplexScalar, d: usize) -> Result<Self> {
        let a = cesaro_coeffs(n_max, delta)?;
        let ratios = (0..=n_max)
            .map(|n| {
                if a[n].norm() == 0.0 {
                    return Err(Error::Domain(format!("maximal operator: A_{n}^delta vanishes at delta = {delta}")));
                }
                Ok((0..=n).map(|j| a[n - j] / a[n]).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            d,
            n_max,
            real_order: delta.im == 0.0,
            ratios,
            proj: ProjectionKernel::new(d)?.with_max_degree(n_max.max(DEFAULT_MAX_DEGREE)),
            cells: 24 + 2 * n_max,
        })
    }

    fn table(&self, r: f64, s: f64, theta: f64) -> Result<Vec<f64>> {
        self.proj.table(self.n_max, KernelPoint::new(r, s, theta.cos()))
    }

    fn sigma(&self, n: usize, phis: &[f64]) -> ComplexScalar {
        self.ratios[n].iter().zip(phis).map(|(c, p)| c * p).sum()
    }

    fn weight(&self, theta: f64) -> f64 {
        theta.sin().powi(self.d as i32 - 2)
    }

    fn gauss(&self, r: f64, s: f64, n: usize, lo: f64, hi: f64) -> Result<f64> {
        let gl = gauss_legendre(NODES_PER_CELL);
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (t, w) in gl.nodes().iter().zip(gl.weights()) {
            let theta = lo + half * (1.0 + t);
            acc += w * self.weight(theta) * self.sigma(n, &self.table(r, s, theta)?).norm();
        }
        Ok(acc * half)
    }

    fn root(&self, r: f64, s: f64, n: usize, mut lo: f64, mut hi: f64, f_lo: f64) -> Result<f64> {
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = self.sigma(n, &self.table(r, s, mid)?).re;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    pub fn eval(&self, r: f64, s: f64) -> Result<Vec<f64>> {
        let gl = gauss_legendre(NODES_PER_CELL);
        let width = PI / self.cells as f64;
        let mut out = vec![0.0; self.n_max + 1];
        for cell in 0..self.cells {
            let (lo, hi) = (cell as f64 * width, (cell + 1) as f64 * width);
            let half = 0.5 * width;
            let thetas: Vec<f64> = gl.nodes().iter().map(|t| lo + half * (1.0 + t)).collect();
            let tables: Vec<Vec<f64>> = thetas.iter().map(|&th| self.table(r, s, th)).collect::<Result<_>>()?;
            let edges = [self.table(r, s, lo)?, self.table(r, s, hi)?];
            for (n, slot) in out.iter_mut().enumerate() {
                let vals: Vec<ComplexScalar> = tables.iter().map(|t| self.sigma(n, t)).collect();
                let mut brackets = Vec::new();
                if self.real_order {
                    let mut samples = vec![(lo, self.sigma(n, &edges[0]).re)];
                    samples.extend(thetas.iter().zip(&vals).map(|(th, v)| (*th, v.re)));
                    samples.push((hi, self.sigma(n, &edges[1]).re));
                    for pair in samples.windows(2) {
                        if pair[0].1 * pair[1].1 < 0.0 {
                            brackets.push((pair[0].0, pair[1].0, pair[0].1));
                        }
                    }
                }
                if brackets.is_empty() {
                    let sum: f64 = gl
                        .weights()
                        .iter()
                        .zip(&thetas)
                        .zip(&vals)
                        .map(|((w, th), v)| w * self.weight(*th) * v.norm())
                        .sum();
                    *slot += sum * half;
                    continue;
                }
                let mut cuts = vec![lo];
                for (a, b, fa) in brackets {
                    cuts.push(self.root(r, s, n, a, b, fa)?);
                }
                cuts.push(hi);
                for seg in cuts.windows(2) {
                    if seg[1] > seg[0] {
                        *slot += self.gauss(r, s, n, seg[0], seg[1])?;
                    }
                }
            }
        }
        Ok(out)
    }
}

fn maximal_family(n_max: usize, delta: ComplexScalar, d: usize, p: f64, f: &RadialSamples) -> Result<Vec<Vec<f64>>> {
    if d < 2 {
        return Err(Error::Domain(format!("maximal operator needs d ≥ 2, got {d}")));
    }
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("maximal operator: p must be at least 1, got {p}")));
    }
    let rule = f.rule();
    let (rd, rg) = radial_params(rule)?;
    let e = rd as f64 + 2.0 * rg - 1.0;
    let p_conj = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
    let nodes = rule.nodes();
    // Plain-measure weights ds times s^{(d−1)/p′} times f(s).
    let inner: Vec<ComplexScalar> = nodes
        .iter()
        .zip(rule.weights())
        .zip(f.values())
        .map(|((&s, &w), v)| v * (w * s.powf(-e) * s.powf((d as f64 - 1.0) / p_conj)))
        .collect();
    let angular = AngularAbsIntegral::new(n_max, delta, d)?;
    nodes
        .par_iter()
        .map(|&r| {
            let mut acc = vec![ComplexScalar::new(0.0, 0.0); n_max + 1];
            for (&s, v) in nodes.iter().zip(&inner) {
                if *v == ComplexScalar::new(0.0, 0.0) {
                    continue;
                }
                for (a, i) in acc.iter_mut().zip(angular.eval(r, s)?) {
                    *a += v * i;
                }
            }
            let scale = r.powf((d as f64 - 1.0) / p);
            Ok(acc.into_iter().map(|a| (a * scale).norm()).collect())
        })
        .collect()
}

/// `𝕊_N^δ f(r) = r^{(d−1)/p} ∫_0^∞ s^{(d−1)/p′} (∫ |σ_N^δ(r, s; u)| (1−u²)^{(d−3)/2} du) f(s) ds`
/// at the nodes of `f`'s rule, in modulus.
pub fn s_operator(n: usize, delta: ComplexScalar, d: usize, p: f64, f: &RadialSamples) -> Result<RadialSamples> {
    let rows = maximal_family(n, delta, d, p, f)?;
    RadialSamples::new(f.rule().clone(), rows.into_iter().map(|row| ComplexScalar::new(row[n], 0.0)).collect())
}

/// `max_{N ≤ n_max} |𝕊_N^δ f(r)|` at the nodes of `f`'s rule.
pub fn sup_s(n_max: usize, delta: ComplexScalar, d: usize, p: f64, f: &RadialSamples) -> Result<RadialSamples> {
    let rows = maximal_family(n_max, delta, d, p, f)?;
    let values = rows
        .into_iter()
        .map(|row| ComplexScalar::new(row.into_iter().fold(0.0, f64::max), 0.0))
        .collect();
    RadialSamples::new(f.rule().clone(), values)
}

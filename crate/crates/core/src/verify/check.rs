use crate::specfun::ComplexScalar;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How an error figure is judged against a tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Comparison {
    /// `|a − b| ≤ tol`.
    Absolute,
    /// `|a − b| / max(floor, |b|) ≤ tol`; `floor = 1` gives the mixed metric.
    Relative { floor: f64 },
    /// A measured ratio that must not exceed the tolerance.
    Inequality,
}

/// The outcome a check is meant to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Pass,
    /// Negative control: the check passes when the tolerance is exceeded.
    Fail,
    /// Reported for information; never affects the suite flag.
    Exploratory,
}

/// Complex number as `[re, im]` in configuration and reports.
pub type Pair = [f64; 2];

pub(crate) fn cx(p: Pair) -> ComplexScalar {
    ComplexScalar::new(p[0], p[1])
}

/// Which quantity a pairing run judges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingMetric {
    /// Late-window maximum of `|F_N|` over the early-window maximum (or the limit).
    Plateau,
    /// `|F_N|` over its Hölder bound.
    Holder,
}

/// Which quantity a convergence run judges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceMetric {
    /// Error at the final degree.
    Final,
    /// Largest step ratio `E(N+1)/E(N)`.
    Monotone,
}

/// A check and the parameter grid it sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Grid {
    /// `A_N^{δ(iβ+ε)} = Σ_j A_{N−j}^{iβ+ε/2−1} A_j^{δ(ε/2)}`.
    BinomialIdentity { d: usize, n_max: usize, betas: Vec<f64>, epsilons: Vec<f64> },
    /// Late-half over early-half maximum of the normalized absolute convolution.
    BinomialBoundPlateau { d: usize, n_max: usize, betas: Vec<f64>, epsilons: Vec<f64> },
    /// The same normalized sum against the explicit constant `2/ε`.
    BinomialBoundExplicit { d: usize, n_max: usize, betas: Vec<f64>, epsilons: Vec<f64> },
    /// Truncated Mehler series against its closed form.
    Mehler { dims: Vec<usize>, ws: Vec<Pair>, radii: Vec<f64>, cosines: Vec<f64>, terms: usize },
    /// Closed form at `x = y` against its one-line specialization.
    MehlerDiagonal { dims: Vec<usize>, ws: Vec<Pair>, radii: Vec<f64> },
    /// `∫ e^{zu} P_m^λ (1−u²)^{λ−1/2} du = √π Γ(λ+1/2) (z/2)^{−λ} I_{λ+m}(z)`.
    UltraBessel { m_max: usize, lambdas: Vec<f64>, zs: Vec<Pair> },
    /// `∫ e^{zu} Q_m^{λ,ε} du` against the Bessel side; `ε = 0` is the limit function.
    QBessel { m_max: usize, alphas: Vec<f64>, betas: Vec<f64>, epsilons: Vec<f64>, zs: Vec<Pair> },
    /// `Q_m^α = P_m^α (1−u²)^{α−1/2} / 2` at `β = 0`.
    QCollapse { m_max: usize, alphas: Vec<f64>, cosines: Vec<f64> },
    /// `|Q| |Γ(1+iβ)| / (1−u²)^{α−1/2}` on a validation grid over the constant fitted per `(α, β)`.
    QUniformBound {
        m_max: usize,
        alphas: Vec<f64>,
        betas: Vec<f64>,
        epsilons: Vec<f64>,
        fit_cosines: Vec<f64>,
        check_cosines: Vec<f64>,
    },
    /// Bilinear Laguerre generating function against its Bessel closed form.
    LaguerreGenerating { m_max: usize, alphas: Vec<f64>, ws: Vec<Pair>, radii: Vec<f64>, terms: usize },
    /// Laguerre sum against both angular forms on an `(r, s)` grid.
    KernelEquivalence {
        d: usize,
        n_max: usize,
        m_max: usize,
        gammas: Vec<f64>,
        delta_offset: f64,
        radii: Vec<f64>,
        constant_scale: f64,
    },
    /// `K_{N,m} = 0` for `N < m` in every form.
    KernelZero { d: usize, n_max: usize, gamma: f64, delta_offset: f64, radii: Vec<f64> },
    /// Weighted complex kernel against its Cesàro-kernel expansion.
    ComplexExpansion {
        d: usize,
        n_max: usize,
        m_max: usize,
        betas: Vec<f64>,
        epsilon: f64,
        p: f64,
        radii: Vec<f64>,
        half_shifts: Vec<bool>,
    },
    /// Complex-order Cesàro kernel as a combination of real-order ones.
    CesaroDecomposition { d: usize, n_max: usize, beta: f64, epsilon: f64, points: Vec<[f64; 3]> },
    /// `T_{N,m}` on Laguerre modes against the Cesàro ratio.
    EigenRelation { d: usize, gamma: f64, delta_offset: f64, n_max: usize, m_max: usize, j_max: usize },
    /// Plateau ratio of `N ↦ ‖T_{N,m}‖_p`, per degree `m` or for the maximum over `m`.
    NormPlateau {
        d: usize,
        gamma: f64,
        delta_offset: f64,
        ps: Vec<f64>,
        m_max: usize,
        n_max: usize,
        per_degree: bool,
    },
    /// Discretized `L²` norm against the diagonalization formula.
    NormQuadrature { d: usize, gamma: f64, delta_offset: f64, n_max: usize, m_max: usize },
    /// Mixed-norm error of `vector_apply` on a normalized family of `k = 0` modes.
    Convergence {
        d: usize,
        gamma: f64,
        delta_offset: f64,
        p: f64,
        modes: Vec<(usize, usize)>,
        n_max: usize,
        metric: ConvergenceMetric,
    },
    /// `|F_N(γ)|` for normalized families.
    Pairing { d: usize, gammas: Vec<f64>, epsilon: f64, p: f64, n_max: usize, metric: PairingMetric },
}

impl Grid {
    /// Short family label used in reports.
    pub fn family(&self) -> &'static str {
        match self {
            Grid::BinomialIdentity { .. } | Grid::BinomialBoundPlateau { .. } | Grid::BinomialBoundExplicit { .. } => {
                "binomial"
            }
            Grid::Mehler { .. } | Grid::MehlerDiagonal { .. } => "mehler",
            Grid::UltraBessel { .. }
            | Grid::QBessel { .. }
            | Grid::QCollapse { .. }
            | Grid::QUniformBound { .. }
            | Grid::LaguerreGenerating { .. } => "special",
            Grid::KernelEquivalence { .. }
            | Grid::KernelZero { .. }
            | Grid::ComplexExpansion { .. }
            | Grid::CesaroDecomposition { .. } => "kernels",
            Grid::EigenRelation { .. }
            | Grid::NormPlateau { .. }
            | Grid::NormQuadrature { .. }
            | Grid::Convergence { .. }
            | Grid::Pairing { .. } => "operators",
        }
    }
}

/// A named, tolerance-checked sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub name: String,
    pub grid: Grid,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub expectation: Expectation,
}

impl CheckSpec {
    pub fn new(name: &str, grid: Grid, tolerance: f64, comparison: Comparison) -> Self {
        Self {
            name: name.to_string(),
            grid,
            tolerance,
            comparison,
            expectation: Expectation::Pass,
        }
    }

    pub fn expecting(mut self, expectation: Expectation) -> Self {
        self.expectation = expectation;
        self
    }
}

/// Worst error seen so far and where it happened; the first maximum wins.
#[derive(Debug, Clone)]
pub(crate) struct Worst {
    pub error: f64,
    pub params: Value,
    pub evaluations: usize,
}

impl Worst {
    pub fn new() -> Self {
        Self {
            error: 0.0,
            params: Value::Null,
            evaluations: 0,
        }
    }

    pub fn record<F: FnOnce() -> Value>(&mut self, error: f64, params: F) {
        self.evaluations += 1;
        let e = if error.is_nan() { f64::INFINITY } else { error };
        if e > self.error || self.params.is_null() {
            self.error = e;
            self.params = params();
        }
    }

    pub fn absorb(&mut self, other: Worst) {
        self.evaluations += other.evaluations;
        if other.error > self.error || (self.params.is_null() && !other.params.is_null()) {
            self.error = other.error;
            self.params = other.params;
        }
    }

    pub fn merge_all<I: IntoIterator<Item = Worst>>(parts: I) -> Self {
        parts.into_iter().fold(Worst::new(), |mut acc, w| {
            acc.absorb(w);
            acc
        })
    }
}

/// `|a − b| / max(floor, |b|)`, zero when both vanish.
pub(crate) fn scaled_error(a: ComplexScalar, b: ComplexScalar, floor: f64) -> f64 {
    let diff = (a - b).norm();
    if diff == 0.0 {
        return 0.0;
    }
    let scale = b.norm().max(floor);
    if scale == 0.0 {
        f64::INFINITY
    } else {
        diff / scale
    }
}

pub(crate) fn floor_of(c: Comparison) -> f64 {
    match c {
        Comparison::Relative { floor } => floor,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn first_maximum_is_kept() {
        let mut w = Worst::new();
        w.record(1.0, || json!({"i": 0}));
        w.record(3.0, || json!({"i": 1}));
        w.record(3.0, || json!({"i": 2}));
        assert_eq!(w.params, json!({"i": 1}));
        assert_eq!(w.evaluations, 3);
    }

    #[test]
    fn nan_counts_as_failure() {
        let mut w = Worst::new();
        w.record(1.0, || json!(0));
        w.record(f64::NAN, || json!(1));
        assert!(w.error.is_infinite());
    }

    #[test]
    fn scaled_error_modes() {
        let a = ComplexScalar::new(1.0 + 1e-3, 0.0);
        let b = ComplexScalar::new(1.0, 0.0);
        assert!((scaled_error(a, b, 0.0) - 1e-3).abs() < 1e-15);
        let tiny = ComplexScalar::new(1e-6, 0.0);
        assert!((scaled_error(tiny * 2.0, tiny, 1.0) - 1e-6).abs() < 1e-20);
        assert_eq!(scaled_error(b, b, 0.0), 0.0);
    }

    #[test]
    fn grid_round_trips_through_json() {
        let g = Grid::Mehler { dims: vec![2], ws: vec![[0.5, 0.0]], radii: vec![1.0], cosines: vec![0.0], terms: 10 };
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains("\"check\":\"mehler\""));
        assert_eq!(serde_json::from_str::<Grid>(&text).unwrap(), g);
    }
}

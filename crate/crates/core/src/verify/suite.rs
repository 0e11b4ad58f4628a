use super::check::{CheckSpec, Comparison, ConvergenceMetric, Expectation, Grid, Pair, PairingMetric};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Scales every non-inequality tolerance of a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TolProfile {
    #[default]
    Standard,
    Strict,
    Loose,
}

impl TolProfile {
    pub fn factor(self) -> f64 {
        match self {
            TolProfile::Standard => 1.0,
            TolProfile::Strict => 0.1,
            TolProfile::Loose => 10.0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(TolProfile::Standard),
            "strict" => Ok(TolProfile::Strict),
            "loose" => Ok(TolProfile::Loose),
            other => Err(Error::Domain(format!("unknown tolerance profile {other:?}"))),
        }
    }

    /// Inequality bounds are structural and stay fixed.
    pub fn apply(self, mut checks: Vec<CheckSpec>) -> Vec<CheckSpec> {
        for c in &mut checks {
            if c.comparison != Comparison::Inequality {
                c.tolerance *= self.factor();
            }
        }
        checks
    }
}

/// Names accepted by [`suite_by_name`].
pub const SUITE_NAMES: [&str; 3] = ["default", "identities", "quick"];

const RELATIVE: Comparison = Comparison::Relative { floor: 0.0 };
const MIXED: Comparison = Comparison::Relative { floor: 1.0 };
const BETAS: [f64; 5] = [0.0, 0.5, -0.5, 2.0, -2.0];
const EPSILONS: [f64; 3] = [0.1, 0.5, 1.0];
const ZS: [Pair; 3] = [[0.5, 0.0], [2.0, 0.0], [1.0, 1.0]];
const OPERATOR_GAMMA: f64 = 0.3;
const DELTA_OFFSET: f64 = 0.5;
const CONVERGENCE_MODES: [(usize, usize); 5] = [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)];

fn mehler_ws() -> Vec<Pair> {
    vec![[0.6, 0.0], [-0.6, 0.0], [0.3, 0.0], [0.0, 0.6], [0.42, 0.42]]
}

fn grid_cosines(n: i32) -> Vec<f64> {
    (-n..=n).map(|k| k as f64 / (n + 1) as f64).collect()
}

fn kernel_radii() -> Vec<f64> {
    vec![0.15, 0.5, 0.9, 1.4, 2.0, 2.8]
}

fn kernel_equivalence(scale: f64) -> Grid {
    Grid::KernelEquivalence {
        d: 2,
        n_max: 20,
        m_max: 6,
        gammas: vec![0.25, 0.4, 0.6],
        delta_offset: 0.6,
        radii: kernel_radii(),
        constant_scale: scale,
    }
}

fn norm_plateau(gamma: f64, per_degree: bool) -> Grid {
    Grid::NormPlateau {
        d: 2,
        gamma,
        delta_offset: DELTA_OFFSET,
        ps: vec![4.0 / 3.0, 2.0, 4.0],
        m_max: 10,
        n_max: 60,
        per_degree,
    }
}

fn convergence(metric: ConvergenceMetric) -> Grid {
    Grid::Convergence {
        d: 2,
        gamma: OPERATOR_GAMMA,
        delta_offset: DELTA_OFFSET,
        p: 2.0,
        modes: CONVERGENCE_MODES.to_vec(),
        n_max: 200,
        metric,
    }
}

fn pairing(metric: PairingMetric) -> Grid {
    Grid::Pairing { d: 2, gammas: vec![0.1, 0.25, 0.4], epsilon: 0.5, p: 4.0, n_max: 30, metric }
}

/// Identity checks that hold to rounding on every grid point.
fn identity_checks() -> Vec<CheckSpec> {
    let cesaro_points = (0..10)
        .map(|k| {
            let t = k as f64;
            [0.2 + 0.25 * t, 2.4 - 0.2 * t, (0.7 * t).cos()]
        })
        .collect();
    vec![
        CheckSpec::new(
            "binomial_identity",
            Grid::BinomialIdentity { d: 2, n_max: 200, betas: BETAS.to_vec(), epsilons: EPSILONS.to_vec() },
            1e-10,
            RELATIVE,
        ),
        CheckSpec::new(
            "mehler",
            Grid::Mehler {
                dims: vec![2, 3],
                ws: mehler_ws(),
                radii: vec![0.1, 0.5, 1.0, 1.5, 2.0],
                cosines: vec![-1.0, -0.5, 0.0, 0.5, 1.0],
                terms: 80,
            },
            1e-8,
            RELATIVE,
        ),
        CheckSpec::new(
            "mehler_diagonal",
            Grid::MehlerDiagonal { dims: vec![2, 3], ws: mehler_ws(), radii: vec![0.0, 0.1, 0.5, 1.0, 1.5, 2.0] },
            1e-10,
            RELATIVE,
        ),
        CheckSpec::new(
            "ultraspherical_bessel",
            Grid::UltraBessel { m_max: 10, lambdas: vec![0.5, 1.0, 2.5], zs: ZS.to_vec() },
            1e-8,
            MIXED,
        ),
        CheckSpec::new(
            "q_bessel",
            Grid::QBessel {
                m_max: 6,
                alphas: vec![1.0, 1.5],
                betas: vec![0.5, 1.0],
                epsilons: vec![0.0, 0.25, 0.5],
                zs: ZS.to_vec(),
            },
            1e-6,
            MIXED,
        ),
        CheckSpec::new(
            "q_collapse",
            Grid::QCollapse { m_max: 6, alphas: vec![0.75, 1.0, 1.5], cosines: grid_cosines(9) },
            1e-8,
            MIXED,
        ),
        CheckSpec::new(
            "laguerre_generating",
            Grid::LaguerreGenerating {
                m_max: 6,
                alphas: vec![0.3, 1.0, 2.2],
                ws: vec![[0.4, 0.0], [-0.5, 0.0], [0.0, 0.45]],
                radii: vec![0.2, 1.0, 2.3],
                terms: 120,
            },
            1e-8,
            MIXED,
        ),
        CheckSpec::new("kernel_equivalence", kernel_equivalence(1.0), 1e-6, MIXED),
        CheckSpec::new(
            "kernel_zero",
            Grid::KernelZero { d: 2, n_max: 8, gamma: 0.6, delta_offset: 0.6, radii: vec![0.3, 1.0, 2.2] },
            1e-8,
            Comparison::Absolute,
        ),
        CheckSpec::new(
            "complex_expansion",
            Grid::ComplexExpansion {
                d: 2,
                n_max: 12,
                m_max: 4,
                betas: vec![0.0, 0.5],
                epsilon: 0.5,
                p: 4.0,
                radii: vec![0.4, 1.1, 2.0],
                half_shifts: vec![false, true],
            },
            1e-6,
            MIXED,
        ),
        CheckSpec::new(
            "cesaro_decomposition",
            Grid::CesaroDecomposition { d: 2, n_max: 10, beta: 0.5, epsilon: 0.4, points: cesaro_points },
            1e-10,
            MIXED,
        ),
        CheckSpec::new(
            "eigen_relation",
            Grid::EigenRelation { d: 2, gamma: OPERATOR_GAMMA, delta_offset: DELTA_OFFSET, n_max: 40, m_max: 8, j_max: 6 },
            1e-8,
            MIXED,
        ),
        CheckSpec::new(
            "norm_quadrature",
            Grid::NormQuadrature { d: 2, gamma: OPERATOR_GAMMA, delta_offset: DELTA_OFFSET, n_max: 40, m_max: 8 },
            1e-8,
            Comparison::Absolute,
        ),
        CheckSpec::new("kernel_equivalence_control", kernel_equivalence(1.01), 1e-6, MIXED)
            .expecting(Expectation::Fail),
    ]
}

/// Bounds, plateaus and convergence runs.
fn bound_checks() -> Vec<CheckSpec> {
    let fit: Vec<f64> = (-19..=19).map(|k| k as f64 / 20.0).chain([-0.99, 0.99, -0.999, 0.999]).collect();
    let check = vec![-1.0 + 1e-10, -0.9999, -0.97, -0.5, 0.13, 0.62, 0.97, 0.9999, 1.0 - 1e-10];
    vec![
        CheckSpec::new(
            "binomial_bound_plateau",
            Grid::BinomialBoundPlateau { d: 2, n_max: 500, betas: BETAS.to_vec(), epsilons: EPSILONS.to_vec() },
            1.05,
            Comparison::Inequality,
        ),
        CheckSpec::new(
            "binomial_bound_explicit",
            Grid::BinomialBoundExplicit { d: 2, n_max: 500, betas: BETAS.to_vec(), epsilons: EPSILONS.to_vec() },
            1.0,
            Comparison::Inequality,
        ),
        CheckSpec::new(
            "q_uniform_bound",
            Grid::QUniformBound {
                m_max: 8,
                alphas: vec![1.0, 1.5],
                betas: vec![0.5, 1.0, 2.0],
                epsilons: vec![0.0, 0.25, 0.5],
                fit_cosines: fit,
                check_cosines: check,
            },
            1.05,
            Comparison::Inequality,
        ),
        CheckSpec::new("norm_plateau_per_degree", norm_plateau(OPERATOR_GAMMA, true), 1.1, Comparison::Inequality),
        CheckSpec::new("norm_plateau_family", norm_plateau(OPERATOR_GAMMA, false), 1.1, Comparison::Inequality),
        CheckSpec::new("convergence_final", convergence(ConvergenceMetric::Final), 1e-2, Comparison::Absolute),
        CheckSpec::new(
            "convergence_monotone",
            convergence(ConvergenceMetric::Monotone),
            1.0 + 1e-12,
            Comparison::Inequality,
        ),
        CheckSpec::new("pairing_plateau", pairing(PairingMetric::Plateau), 1.1, Comparison::Inequality),
        CheckSpec::new("pairing_holder", pairing(PairingMetric::Holder), 1.0 + 1e-12, Comparison::Inequality),
        CheckSpec::new("norm_plateau_large_gamma", norm_plateau(0.75, true), 1.1, Comparison::Inequality)
            .expecting(Expectation::Exploratory),
    ]
}

/// Every check: identities, bounds, the negative control and exploratory runs.
pub fn default_suite(profile: TolProfile) -> Vec<CheckSpec> {
    let mut checks = identity_checks();
    checks.extend(bound_checks());
    profile.apply(checks)
}

/// Only the identity checks.
pub fn identities_suite(profile: TolProfile) -> Vec<CheckSpec> {
    profile.apply(identity_checks())
}

/// Small grids covering every check family, for smoke runs.
pub fn quick_suite(profile: TolProfile) -> Vec<CheckSpec> {
    let checks = vec![
        CheckSpec::new(
            "binomial_identity",
            Grid::BinomialIdentity { d: 2, n_max: 30, betas: vec![0.0, 0.5], epsilons: vec![0.5] },
            1e-10,
            RELATIVE,
        ),
        CheckSpec::new(
            "mehler",
            Grid::Mehler { dims: vec![2], ws: vec![[0.4, 0.0]], radii: vec![0.5, 1.0], cosines: vec![0.0, 1.0], terms: 50 },
            1e-8,
            RELATIVE,
        ),
        CheckSpec::new(
            "q_collapse",
            Grid::QCollapse { m_max: 2, alphas: vec![1.0], cosines: vec![-0.5, 0.5] },
            1e-8,
            MIXED,
        ),
        CheckSpec::new(
            "kernel_equivalence",
            Grid::KernelEquivalence {
                d: 2,
                n_max: 4,
                m_max: 2,
                gammas: vec![0.25],
                delta_offset: 0.6,
                radii: vec![0.5, 1.2],
                constant_scale: 1.0,
            },
            1e-6,
            MIXED,
        ),
        CheckSpec::new(
            "eigen_relation",
            Grid::EigenRelation { d: 2, gamma: 0.3, delta_offset: 0.5, n_max: 6, m_max: 2, j_max: 2 },
            1e-8,
            MIXED,
        ),
        CheckSpec::new(
            "pairing_holder",
            Grid::Pairing { d: 2, gammas: vec![0.25], epsilon: 0.5, p: 4.0, n_max: 4, metric: PairingMetric::Holder },
            1.0 + 1e-12,
            Comparison::Inequality,
        ),
    ];
    profile.apply(checks)
}

/// Looks up a built-in suite.
///
/// # Errors
/// [`Error::Domain`] for an unknown name.
pub fn suite_by_name(name: &str, profile: TolProfile) -> Result<Vec<CheckSpec>> {
    match name {
        "default" => Ok(default_suite(profile)),
        "identities" => Ok(identities_suite(profile)),
        "quick" => Ok(quick_suite(profile)),
        other => Err(Error::Domain(format!("unknown suite {other:?}; expected one of {SUITE_NAMES:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn names_are_unique() {
        for name in SUITE_NAMES {
            let s = suite_by_name(name, TolProfile::Standard).unwrap();
            let set: BTreeSet<_> = s.iter().map(|c| c.name.clone()).collect();
            assert_eq!(set.len(), s.len(), "{name}");
        }
    }

    #[test]
    fn profile_leaves_inequalities_alone() {
        let strict = default_suite(TolProfile::Strict);
        let standard = default_suite(TolProfile::Standard);
        for (a, b) in strict.iter().zip(&standard) {
            if a.comparison == Comparison::Inequality {
                assert_eq!(a.tolerance, b.tolerance);
            } else {
                assert!((a.tolerance - 0.1 * b.tolerance).abs() <= 1e-15 * b.tolerance);
            }
        }
    }

    #[test]
    fn unknown_names_rejected() {
        assert!(suite_by_name("nope", TolProfile::Standard).is_err());
        assert!(TolProfile::parse("tight").is_err());
    }

    #[test]
    fn suites_round_trip_through_json() {
        let s = default_suite(TolProfile::Standard);
        let text = serde_json::to_string(&s).unwrap();
        let back: Vec<CheckSpec> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}

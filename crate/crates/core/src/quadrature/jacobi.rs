use super::rule::{QuadratureRule, RuleDomain};
use crate::error::{Error, Result};
use crate::specfun::{log_gamma, ComplexScalar};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

const QL_MAX_SWEEPS: usize = 60;
const NEWTON_MAX_STEPS: usize = 30;

/// `n`-point Gauss–Jacobi rule for the weight `(1−u)^a (1+u)^b` on `[−1, 1]`.
///
/// Nodes are eigenvalues of the Jacobi matrix built from the three-term
/// recurrence, polished by Newton steps on the orthonormal recurrence; weights
/// are the reciprocal Christoffel sums `1 / Σ_{k<n} p_k(x_i)²`.
///
/// ```
/// use dunkl_cesaro::quadrature::gauss_jacobi;
/// let rule = gauss_jacobi(1, 0.0, 0.0).unwrap();
/// assert_eq!(rule.nodes(), &[0.0]);
/// assert!((rule.weights()[0] - 2.0).abs() < 1e-15);
/// ```
///
/// # Errors
/// [`Error::Domain`] for `n = 0` or exponents `≤ −1`; [`Error::NoConvergence`]
/// if the eigenvalue sweep or a Newton polish stalls.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain("gauss_jacobi: n must be at least 1".into()));
    }
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Domain(format!(
            "gauss_jacobi: exponents must exceed -1, got a = {a}, b = {b}"
        )));
    }
    let (alpha, beta) = recurrence(n, a, b);
    let mu0 = weight_mass(a, b)?;

    let mut diag = alpha.clone();
    let mut off: Vec<f64> = (0..n)
        .map(|k| if k + 1 < n { beta[k + 1].sqrt() } else { 0.0 })
        .collect();
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(|x, y| x.total_cmp(y));

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (i, &guess) in diag.iter().enumerate() {
        let mut x = guess.clamp(-1.0, 1.0);
        let mut last = f64::INFINITY;
        let mut converged = false;
        for _ in 0..NEWTON_MAX_STEPS {
            let (p, dp, _) = orthonormal_eval(&alpha, &beta, mu0, n, x);
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            x -= step;
            last = step.abs();
            if last <= 4.0 * f64::EPSILON * x.abs().max(1e-3) {
                converged = true;
                break;
            }
        }
        if !converged && last > 1e-12 {
            return Err(Error::NoConvergence {
                what: format!("gauss_jacobi node {i} of n = {n}, a = {a}, b = {b}"),
                iterations: NEWTON_MAX_STEPS,
                last_step: last,
            });
        }
        let (_, _, christoffel) = orthonormal_eval(&alpha, &beta, mu0, n, x);
        nodes.push(x);
        weights.push(1.0 / christoffel);
    }
    for w in nodes.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::NoConvergence {
                what: format!("gauss_jacobi nodes collapsed (n = {n}, a = {a}, b = {b})"),
                iterations: NEWTON_MAX_STEPS,
                last_step: w[1] - w[0],
            });
        }
    }
    if nodes[0] <= -1.0 || nodes[n - 1] >= 1.0 {
        return Err(Error::NoConvergence {
            what: format!("gauss_jacobi node left the open interval (n = {n}, a = {a}, b = {b})"),
            iterations: NEWTON_MAX_STEPS,
            last_step: 0.0,
        });
    }
    Ok(QuadratureRule::new(nodes, weights, RuleDomain::Jacobi { a, b }))
}

type RuleKey = (usize, u64, u64);

fn cache() -> &'static RwLock<HashMap<RuleKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<RwLock<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`gauss_jacobi`]; safe under concurrent use.
pub fn gauss_jacobi_cached(n: usize, a: f64, b: f64) -> Result<Arc<QuadratureRule>> {
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(rule) = cache().read().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_jacobi(n, a, b)?);
    cache()
        .write()
        .expect("rule cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Memoized `n`-point Gauss–Legendre rule.
pub fn gauss_legendre(n: usize) -> Arc<QuadratureRule> {
    gauss_jacobi_cached(n.max(1), 0.0, 0.0).expect("Legendre rules always converge")
}

// Monic recurrence: alpha[k] for k < n and beta[k] for 1 ≤ k ≤ n (beta[0] unused).
fn recurrence(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut alpha = Vec::with_capacity(n);
    let mut beta = vec![0.0; n + 1];
    let ab = a + b;
    for k in 0..n {
        let kf = k as f64;
        let t = 2.0 * kf + ab;
        alpha.push(if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (t * (t + 2.0))
        });
    }
    for k in 1..=n {
        let kf = k as f64;
        let t = 2.0 * kf + ab;
        beta[k] = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))
        };
    }
    (alpha, beta)
}

/// `∫_{−1}^{1} (1−u)^a (1+u)^b du = 2^{a+b+1} Γ(a+1)Γ(b+1)/Γ(a+b+2)`.
fn weight_mass(a: f64, b: f64) -> Result<f64> {
    let lg = |x: f64| log_gamma(ComplexScalar::new(x, 0.0)).map(|v| v.re);
    Ok(((a + b + 1.0) * std::f64::consts::LN_2 + lg(a + 1.0)? + lg(b + 1.0)? - lg(a + b + 2.0)?)
        .exp())
}

// Orthonormal p_n(x), p_n'(x) and Σ_{k<n} p_k(x)².
fn orthonormal_eval(alpha: &[f64], beta: &[f64], mu0: f64, n: usize, x: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    let mut sum = 0.0;
    for k in 0..n {
        sum += p * p;
        let sb_next = beta[k + 1].sqrt();
        let sb = if k == 0 { 0.0 } else { beta[k].sqrt() };
        let p_next = ((x - alpha[k]) * p - sb * p_prev) / sb_next;
        let dp_next = (p + (x - alpha[k]) * dp - sb * dp_prev) / sb_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp, sum)
}

// Implicit QL on a symmetric tridiagonal matrix; eigenvalues overwrite `d`.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    what: format!("tridiagonal QL for eigenvalue {l} of {n}"),
                    iterations: sweeps,
                    last_step: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

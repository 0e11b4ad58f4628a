use super::jacobi::gauss_legendre;
use crate::specfun::ComplexScalar;

/// Mesh controls for [`integrate_endpoint_singular`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedOptions {
    /// Panels per half-interval; the last one has relative width `2^{-levels}`.
    pub levels: usize,
    /// Gauss–Legendre points per panel.
    pub points: usize,
}

impl Default for GradedOptions {
    fn default() -> Self {
        Self {
            levels: 40,
            points: 12,
        }
    }
}

/// A sample point of the graded rule with its exact distances to both ends.
///
/// Distances are carried separately because `b − x` computed by subtraction
/// loses all relative accuracy in the panels packed against `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointPoint {
    pub x: f64,
    pub from_left: f64,
    pub from_right: f64,
}

/// `∫_a^b (x−a)^{p} (b−x)^{q} g(x) dx` for smooth `g` and complex `p`, `q` with real parts above −1.
///
/// Each half of the interval is cut into panels shrinking geometrically toward
/// its endpoint. The panel touching an endpoint is integrated in product form:
/// the power is integrated exactly and the rest is sampled at the centroid of
/// the power weight.
pub fn integrate_endpoint_singular<F>(
    a: f64,
    b: f64,
    left: ComplexScalar,
    right: ComplexScalar,
    g: F,
    opts: GradedOptions,
) -> ComplexScalar
where
    F: Fn(EndpointPoint) -> ComplexScalar,
{
    let zero = ComplexScalar::new(0.0, 0.0);
    if b <= a {
        return zero;
    }
    debug_assert!(left.re > -1.0 && right.re > -1.0);
    let gl = gauss_legendre(opts.points);
    let width = b - a;
    let len = 0.5 * width;
    let power = |d: f64, e: ComplexScalar| {
        if e == zero {
            ComplexScalar::new(1.0, 0.0)
        } else {
            (d.ln() * e).exp()
        }
    };
    let at_left = |da: f64| EndpointPoint {
        x: a + da,
        from_left: da,
        from_right: width - da,
    };
    let at_right = |db: f64| EndpointPoint {
        x: b - db,
        from_left: width - db,
        from_right: db,
    };
    let full = |pt: EndpointPoint| g(pt) * power(pt.from_left, left) * power(pt.from_right, right);
    // Panel [lo, hi] in distance from an endpoint.
    let panel = |lo: f64, hi: f64, place: &dyn Fn(f64) -> EndpointPoint| -> ComplexScalar {
        let half = 0.5 * (hi - lo);
        gl.nodes()
            .iter()
            .zip(gl.weights())
            .map(|(t, w)| full(place(lo + half * (1.0 + t))) * (w * half))
            .sum()
    };

    let mut total = zero;
    let mut outer = 1.0;
    for _ in 0..opts.levels {
        let inner = outer * 0.5;
        total += panel(len * inner, len * outer, &at_left);
        total += panel(len * inner, len * outer, &at_right);
        outer = inner;
    }
    let h = len * outer;
    // Terminal panels: ∫_0^h t^p F(t) dt ≈ F(t_c) h^{p+1}/(p+1), t_c the centroid of t^p.
    let pl = at_left(h * (left.re + 1.0) / (left.re + 2.0));
    total += g(pl) * power(pl.from_right, right) * power(h, left + 1.0) / (left + 1.0);
    let pr = at_right(h * (right.re + 1.0) / (right.re + 2.0));
    total += g(pr) * power(pr.from_left, left) * power(h, right + 1.0) / (right + 1.0);
    total
}

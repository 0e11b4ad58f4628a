//! Radial operators `T_{N,m}^{δ,γ}` acting on sampled coefficient families,
//! mixed norms, operator-norm probes, the pairing functional and the
//! maximal operator built from absolute Cesàro kernels.

mod apply;
mod maximal;
mod norm;
mod pairing;
mod samples;

pub use apply::{apply_t, mixed_norm, vector_apply};
pub use maximal::{s_operator, sup_s};
pub use norm::{
    discrete_l2_norm, l2_norm_exact, operator_norm, operator_norm_with, plateau_ratio, NormMethod,
    NormOptions, OperatorNorm,
};
pub use pairing::{pairing, pairing_f, Pairing};
pub use samples::{
    default_points_per_panel, default_radial_rule, laguerre_mode, CoefficientFamily, RadialSamples,
};

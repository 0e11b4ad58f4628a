//! Projection, Cesàro and radial kernels in each of their equivalent forms.

mod cesaro;
mod complex;
mod funk_hecke;
mod laguerre;
mod projection;

pub use cesaro::{cesaro_from_projections, cesaro_kernel};
pub(crate) use complex::radial_power;
pub use complex::{
    complex_kernel, complex_kernel_expansion, ComplexKernelParams, ExpansionQuadrature,
};
pub use funk_hecke::{
    funk_hecke_constant, funk_hecke_kernel, funk_hecke_kernel_with, FunkHeckeOptions,
    FunkHeckeVariant,
};
pub use laguerre::{k_laguerre, LaguerreKernel};
pub use projection::{
    hermite_projection_kernel, mehler_closed_form, mehler_coefficients, projection_kernels,
    ProjectionKernel, DEFAULT_MAX_DEGREE,
};

use serde::{Deserialize, Serialize};

/// Radii `r, s ≥ 0` and the cosine `u ∈ [−1, 1]` of the angle between the two directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub r: f64,
    pub s: f64,
    pub u: f64,
}

impl KernelPoint {
    pub fn new(r: f64, s: f64, u: f64) -> Self {
        Self { r, s, u }
    }

    pub fn swapped(self) -> Self {
        Self {
            r: self.s,
            s: self.r,
            u: self.u,
        }
    }
}

/// Which formula evaluates the radial kernel `K_{N,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelForm {
    /// Finite Laguerre sum.
    LaguerreSum,
    /// Angular integral of the `d`-dimensional Cesàro kernel.
    FunkHeckeD,
    /// Angular integral of the `(d+1)`-dimensional Cesàro kernel.
    FunkHeckeDPlus1,
    /// Weighted kernel with complex order on the strip.
    ComplexExtended,
}

impl KernelForm {
    pub const ALL: [KernelForm; 4] = [
        KernelForm::LaguerreSum,
        KernelForm::FunkHeckeD,
        KernelForm::FunkHeckeDPlus1,
        KernelForm::ComplexExtended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelForm::LaguerreSum => "laguerre_sum",
            KernelForm::FunkHeckeD => "funk_hecke_d",
            KernelForm::FunkHeckeDPlus1 => "funk_hecke_d_plus_1",
            KernelForm::ComplexExtended => "complex_extended",
        }
    }
}

impl std::str::FromStr for KernelForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KernelForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown kernel form '{s}' (expected one of laguerre_sum, funk_hecke_d, funk_hecke_d_plus_1, complex_extended)"
                )
            })
    }
}

use num_complex::Complex64;
use serde::Serialize;

/// Complex reflection/transmission amplitudes of a one-dimensional scatterer.
///
/// For the electromagnetic slab these are `S11` and `S21`; for a quantum
/// barrier they are `r = A'₁/A₁` and `t = A₃/A₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatterResult {
    pub r: Complex64,
    pub t: Complex64,
}

impl ScatterResult {
    pub fn new(r: Complex64, t: Complex64) -> Self {
        Self { r, t }
    }

    /// `R = |r|²`
    pub fn reflectance(&self) -> f64 {
        self.r.norm_sqr()
    }

    /// `T = |t|²`
    pub fn transmittance(&self) -> f64 {
        self.t.norm_sqr()
    }

    /// `|R + T - 1|`; zero for a lossless scatterer.
    pub fn flux_defect(&self) -> f64 {
        (self.reflectance() + self.transmittance() - 1.0).abs()
    }

    /// Largest of `|Δr|` and `|Δt|`.
    pub fn max_abs_diff(&self, other: &ScatterResult) -> f64 {
        (self.r - other.r).norm().max((self.t - other.t).norm())
    }
}

//! Plane-wave scattering of a quantum particle off rectangular and
//! delta-function barriers, by the transfer-matrix method.
//!
//! Conventions: plane waves `e^{ikz}` travel towards `+z`, time dependence is
//! `e^{-iEt/ħ}`. The barrier occupies `0 ≤ z ≤ L`; reflection is referenced
//! to `z = 0` and transmission is the amplitude of `e^{ikz}` on the right
//! (so `t` carries the `e^{-ikL}` phase).
//!
//! Below the barrier the same closed forms are used with `q = iρ`. All
//! coefficient formulas are even in `q`, so they are written in terms of
//! `q²` and `sin(qL)/q`, which also removes the `0/0` at `E = V_b`.

use num_complex::Complex64;
use thiserror::Error;

use crate::cmath::{c, scaled_cos_sin, I};
use crate::matrix::{chain, TransferMatrix2};
use crate::scatter::ScatterResult;
use crate::units::HBAR;

/// Below this `|qL|` the trigonometric terms are replaced by their series.
pub const SERIES_THRESHOLD: f64 = 1e-4;
/// Relative width of the band around `E = V_b` tagged as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmError {
    #[error("energy must be positive (got {0} J)")]
    NonPositiveEnergy(f64),
    #[error("wavenumber must be positive (got {0} 1/m)")]
    NonPositiveWavenumber(f64),
    #[error("barrier height {height} J is not above the energy {energy} J")]
    HeightNotAboveEnergy { height: f64, energy: f64 },
    #[error("invalid barrier: {0}")]
    InvalidBarrier(&'static str),
    #[error("empty layer list")]
    EmptyList,
}

/// Rectangular barrier (or well, for negative height) of finite width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmBarrier {
    /// Barrier height `V_b` (J); negative values describe a well.
    pub height: f64,
    /// Width `L` (m).
    pub width: f64,
    /// Particle mass (kg).
    pub mass: f64,
}

impl QmBarrier {
    pub fn new(height: f64, width: f64, mass: f64) -> Result<Self, QmError> {
        if !height.is_finite() {
            return Err(QmError::InvalidBarrier("height must be finite"));
        }
        if !(width >= 0.0) || !width.is_finite() {
            return Err(QmError::InvalidBarrier("width must be finite and non-negative"));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(QmError::InvalidBarrier("mass must be positive"));
        }
        Ok(Self { height, width, mass })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `E > V_b`, real `q`.
    Above,
    /// `E < V_b`, `q = iρ`.
    Below,
    /// `|E - V_b|` within [`DEGENERACY_THRESHOLD`] of zero.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierWavenumber {
    /// `q`, with `Im q ≥ 0`.
    pub value: Complex64,
    pub regime: Regime,
}

/// `k = √(2mE)/ħ`.
pub fn free_wavenumber(energy: f64, mass: f64) -> Result<f64, QmError> {
    if !(energy > 0.0) {
        return Err(QmError::NonPositiveEnergy(energy));
    }
    Ok((2.0 * mass * energy).sqrt() / HBAR)
}

/// Energy of a free particle with wavenumber `k`: `ħ²k²/2m`.
pub fn energy_of_wavenumber(k: f64, mass: f64) -> f64 {
    HBAR * HBAR * k * k / (2.0 * mass)
}

/// Free and barrier-region wavenumbers for a particle of energy `energy`.
pub fn wavenumbers(energy: f64, barrier: &QmBarrier) -> Result<(f64, BarrierWavenumber), QmError> {
    let k = free_wavenumber(energy, barrier.mass)?;
    let excess = energy - barrier.height;
    let value = if excess >= 0.0 {
        c((2.0 * barrier.mass * excess).sqrt() / HBAR, 0.0)
    } else {
        c(0.0, (-2.0 * barrier.mass * excess).sqrt() / HBAR)
    };
    let regime = if excess.abs() <= DEGENERACY_THRESHOLD * energy.max(barrier.height.abs()) {
        Regime::Degenerate
    } else if excess > 0.0 {
        Regime::Above
    } else {
        Regime::Below
    };
    Ok((k, BarrierWavenumber { value, regime }))
}

/// `(cos(qL), sin(qL)/q)` with the series used for small `|qL|`.
fn cos_and_sinc(q: Complex64, width: f64) -> (Complex64, Complex64) {
    let phase = q * width;
    if phase.norm() < SERIES_THRESHOLD {
        let x = phase * phase;
        let co = 1.0 - x / 2.0 + x * x / 24.0;
        let s = (1.0 - x / 6.0 + x * x / 120.0) * width;
        (co, s)
    } else {
        (phase.cos(), phase.sin() / q)
    }
}

/// Transfer matrix mapping `(A₁, A'₁)` on the left of the barrier to
/// `(A₃, A'₃)` on the right.
pub fn transfer_matrix_rect(barrier: &QmBarrier, energy: f64) -> Result<TransferMatrix2, QmError> {
    let (k, q) = wavenumbers(energy, barrier)?;
    Ok(transfer_matrix_from_wavenumbers(k, q.value, barrier.width))
}

pub fn transfer_matrix_from_wavenumbers(k: f64, q: Complex64, width: f64) -> TransferMatrix2 {
    let (co, s) = cos_and_sinc(q, width);
    let q2 = q * q;
    let kk = k * k;
    let sum = I * (q2 + kk) * s / (2.0 * k);
    let diff = I * (q2 - kk) * s / (2.0 * k);
    let back = (-I * k * width).exp();
    let fwd = (I * k * width).exp();
    TransferMatrix2 {
        m11: back * (co + sum),
        m12: back * diff,
        m21: fwd * (-diff),
        m22: fwd * (co - sum),
    }
}

/// Reflection and transmission of a rectangular barrier.
pub fn rt_rect(barrier: &QmBarrier, energy: f64) -> Result<ScatterResult, QmError> {
    let (k, q) = wavenumbers(energy, barrier)?;
    Ok(rt_from_wavenumbers(k, q.value, barrier.width))
}

/// Closed-form `r`, `t` for free wavenumber `k`, barrier wavenumber `q`
/// (any complex value) and width `width`.
pub fn rt_from_wavenumbers(k: f64, q: Complex64, width: f64) -> ScatterResult {
    let phase = q * width;
    let (num, den, t_scale) = if phase.norm() < SERIES_THRESHOLD {
        let (co, s) = cos_and_sinc(q, width);
        let q2 = q * q;
        let num = I * (q2 / k - k) * s;
        let den = 2.0 * co - I * (q2 / k + k) * s;
        (num, den, c(1.0, 0.0))
    } else {
        // every term is scaled by w = e^{±iqL}, which cancels in r and
        // leaves a factor w on t
        let (cw, sw, w) = scaled_cos_sin(phase);
        let ratio = q / k;
        let inv = k / q;
        let num = I * (ratio - inv) * sw;
        let den = 2.0 * cw - I * (ratio + inv) * sw;
        (num, den, w)
    };
    let t = 2.0 * (-I * k * width).exp() * t_scale / den;
    ScatterResult::new(num / den, t)
}

/// Coefficients read off a transfer matrix: `A'₃ = 0` gives `r = -m21/m22`
/// and `t = det/m22`.
pub fn rt_from_matrix(m: &TransferMatrix2) -> ScatterResult {
    let r = -m.m21 / m.m22;
    let t = m.m11 + m.m12 * r;
    ScatterResult::new(r, t)
}

/// Delta-function barrier `V(x) = λ δ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaBarrier {
    /// `λ = V_b·L` (J·m).
    pub strength: f64,
    pub mass: f64,
}

impl DeltaBarrier {
    pub fn new(strength: f64, mass: f64) -> Result<Self, QmError> {
        if !(strength > 0.0) || !strength.is_finite() {
            return Err(QmError::InvalidBarrier("delta strength must be positive"));
        }
        if !(mass > 0.0) {
            return Err(QmError::InvalidBarrier("mass must be positive"));
        }
        Ok(Self { strength, mass })
    }

    /// `γ = k/λ`.
    pub fn gamma(&self, k: f64) -> f64 {
        k / self.strength
    }

    /// Dimensionless `ħ²γ/m`; `R = T = ½` when this equals one.
    pub fn coupling(&self, k: f64) -> f64 {
        HBAR * HBAR * self.gamma(k) / self.mass
    }
}

/// `r = 1/(iħ²γ/m − 1)`, `t = 1/(1 − m/(iħ²γ))`.
pub fn rt_delta(barrier: &DeltaBarrier, k: f64) -> Result<ScatterResult, QmError> {
    if !(k > 0.0) {
        return Err(QmError::NonPositiveWavenumber(k));
    }
    let x = barrier.coupling(k);
    let r = 1.0 / (I * x - 1.0);
    let t = 1.0 / (1.0 - 1.0 / (I * x));
    Ok(ScatterResult::new(r, t))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaLimitStep {
    pub height: f64,
    pub width: f64,
    pub rect: ScatterResult,
    pub delta: ScatterResult,
}

/// Rectangular barriers of growing height at fixed area `V_b·L`, alongside
/// the delta-function value they converge to.
pub fn delta_limit_schedule(
    energy: f64,
    area: f64,
    heights: &[f64],
    mass: f64,
) -> Result<Vec<DeltaLimitStep>, QmError> {
    let k = free_wavenumber(energy, mass)?;
    let delta = rt_delta(&DeltaBarrier::new(area, mass)?, k)?;
    heights
        .iter()
        .map(|&height| {
            if !(height > energy) {
                return Err(QmError::HeightNotAboveEnergy { height, energy });
            }
            let barrier = QmBarrier::new(height, area / height, mass)?;
            Ok(DeltaLimitStep {
                height,
                width: barrier.width,
                rect: rt_rect(&barrier, energy)?,
                delta,
            })
        })
        .collect()
}

/// Compose transfer matrices given in propagation order.
pub fn cascade(matrices: &[TransferMatrix2]) -> Result<TransferMatrix2, QmError> {
    chain(matrices).ok_or(QmError::EmptyList)
}

/// Re-express a barrier matrix built with its left face at the origin for a
/// barrier whose left face sits at `offset`.
pub fn translate(m: &TransferMatrix2, k: f64, offset: f64) -> TransferMatrix2 {
    let p = (I * k * offset).exp();
    let pinv = 1.0 / p;
    // D⁻¹ M D with D = diag(e^{ikz₀}, e^{-ikz₀})
    TransferMatrix2 {
        m11: m.m11,
        m12: m.m12 * pinv * pinv,
        m21: m.m21 * p * p,
        m22: m.m22,
    }
}

/// One piece of a piecewise-constant potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmLayer {
    pub height: f64,
    pub width: f64,
}

/// Transfer matrix of consecutive layers starting at `z = 0`, free space on
/// both sides.
pub fn transfer_matrix_piecewise(layers: &[QmLayer], energy: f64, mass: f64) -> Result<TransferMatrix2, QmError> {
    let k = free_wavenumber(energy, mass)?;
    let mut offset = 0.0;
    let mut mats = Vec::with_capacity(layers.len());
    for layer in layers {
        let barrier = QmBarrier::new(layer.height, layer.width, mass)?;
        let local = transfer_matrix_rect(&barrier, energy)?;
        mats.push(translate(&local, k, offset));
        offset += layer.width;
    }
    cascade(&mats)
}

pub fn rt_piecewise(layers: &[QmLayer], energy: f64, mass: f64) -> Result<ScatterResult, QmError> {
    Ok(rt_from_matrix(&transfer_matrix_piecewise(layers, energy, mass)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmath::{rel_diff, ONE, ZERO};
    use crate::units::{ELECTRON_MASS, ELECTRON_VOLT};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const EV: f64 = ELECTRON_VOLT;
    const ME: f64 = ELECTRON_MASS;

    /// Independent route: solve the interface conditions with explicit
    /// 2×2 matching matrices, `M = B_k(L)⁻¹ B_q(L) B_q(0)⁻¹ B_k(0)`.
    fn matching_oracle(k: f64, q: Complex64, l: f64) -> TransferMatrix2 {
        fn basis(kz: Complex64, z: f64) -> TransferMatrix2 {
            let e = (I * kz * z).exp();
            let ei = (-I * kz * z).exp();
            TransferMatrix2::new(e, ei, I * kz * e, -I * kz * ei)
        }
        fn inv(m: TransferMatrix2) -> TransferMatrix2 {
            let d = m.det();
            TransferMatrix2::new(m.m22 / d, -m.m12 / d, -m.m21 / d, m.m11 / d)
        }
        let kc = c(k, 0.0);
        inv(basis(kc, l)) * basis(q, l) * inv(basis(q, 0.0)) * basis(kc, 0.0)
    }

    fn barrier(vb_ev: f64, l_nm: f64) -> QmBarrier {
        QmBarrier::new(vb_ev * EV, l_nm * 1e-9, ME).unwrap()
    }

    #[test]
    fn free_space_barrier_wavenumber_equals_k() {
        let (k, q) = wavenumbers(2.0 * EV, &barrier(0.0, 1.0)).unwrap();
        assert_eq!(q.regime, Regime::Above);
        assert!((q.value.re - k).abs() < 1e-6 * k && q.value.im == 0.0);
    }

    #[test]
    fn half_height_gives_imaginary_k() {
        let (k, q) = wavenumbers(2.5 * EV, &barrier(5.0, 1.0)).unwrap();
        assert_eq!(q.regime, Regime::Below);
        assert_eq!(q.value.re, 0.0);
        assert!((q.value.im - k).abs() < 1e-12 * k);
    }

    #[test]
    fn decay_constant_for_one_ev_under_five() {
        let (_, q) = wavenumbers(1.0 * EV, &barrier(5.0, 1.0)).unwrap();
        // sqrt(2 m_e · 4 eV)/ħ
        assert!((q.value.im - 1.0246e10).abs() < 0.0005e10);
    }

    #[test]
    fn degenerate_regime_tagged() {
        let (_, q) = wavenumbers(EV * (1.0 + 1e-12), &barrier(1.0, 1.0)).unwrap();
        assert_eq!(q.regime, Regime::Degenerate);
    }

    #[test]
    fn non_positive_energy_rejected() {
        assert_eq!(rt_rect(&barrier(1.0, 1.0), 0.0), Err(QmError::NonPositiveEnergy(0.0)));
        assert!(QmBarrier::new(1.0, -1.0, ME).is_err());
        assert!(QmBarrier::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn zero_width_is_identity() {
        let m = transfer_matrix_rect(&barrier(3.0, 0.0), 1.0 * EV).unwrap();
        assert!(m.max_rel_diff(&TransferMatrix2::IDENTITY) < 1e-15);
        let s = rt_rect(&barrier(3.0, 0.0), 1.0 * EV).unwrap();
        assert!(s.r.norm() < 1e-15 && (s.t - ONE).norm() < 1e-15);
    }

    #[test]
    fn no_barrier_is_pure_phase() {
        let m = transfer_matrix_rect(&barrier(0.0, 1.3), 0.7 * EV).unwrap();
        assert!(m.m12.norm() < 1e-15 && m.m21.norm() < 1e-15);
        assert!((m.m11.norm() - 1.0).abs() < 1e-14);
        // phases cancel: q = k so m11 = e^{-ikL} e^{ikL}
        assert!((m.m11 - ONE).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_matching_oracle() {
        for (e, vb, l) in [(1.0, 5.0, 0.5), (6.0, 5.0, 1.2), (2.0, -3.0, 0.8), (0.3, 0.31, 2.0)] {
            let b = barrier(vb, l);
            let (k, q) = wavenumbers(e * EV, &b).unwrap();
            let m = transfer_matrix_rect(&b, e * EV).unwrap();
            let oracle = matching_oracle(k, q.value, b.width);
            assert!(m.max_rel_diff(&oracle) < 1e-12, "{e} {vb} {l}");
        }
    }

    #[test]
    fn matrix_route_equals_closed_form() {
        for (e, vb, l) in [(1.0, 5.0, 0.5), (6.0, 5.0, 1.2), (2.0, -3.0, 0.8)] {
            let b = barrier(vb, l);
            let a = rt_rect(&b, e * EV).unwrap();
            let m = rt_from_matrix(&transfer_matrix_rect(&b, e * EV).unwrap());
            assert!(a.max_abs_diff(&m) < 1e-12);
        }
    }

    #[test]
    fn resonance_is_reflectionless() {
        // choose L so that qL = π above the barrier
        let b0 = barrier(2.0, 1.0);
        let e = 3.0 * EV;
        let (_, q) = wavenumbers(e, &b0).unwrap();
        let b = QmBarrier::new(b0.height, PI / q.value.re, ME).unwrap();
        let s = rt_rect(&b, e).unwrap();
        assert!(s.r.norm() < 1e-14);
        assert!((s.t.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn top_of_barrier_limit() {
        let b = barrier(1.0, 0.9);
        let e = 1.0 * EV;
        let (k, _) = wavenumbers(e, &b).unwrap();
        let kl = k * b.width;
        let s = rt_rect(&b, e).unwrap();
        let expected_t = 2.0 * (-I * kl).exp() / (2.0 - I * kl);
        assert!((s.t - expected_t).norm() < 1e-14);
        assert!((s.transmittance() - 4.0 / (4.0 + kl * kl)).abs() < 1e-14);
        // the q = 1e-6 k evaluation through the trigonometric route
        let q = c(1e-6 * k, 0.0);
        let near = rt_from_wavenumbers(k, q, b.width);
        assert!((near.t - expected_t).norm() < 1e-9);
    }

    #[test]
    fn hyperbolic_form_below_barrier() {
        let b = barrier(5.0, 0.7);
        let e = 1.3 * EV;
        let (k, q) = wavenumbers(e, &b).unwrap();
        let rho = q.value.im;
        let (sh, ch) = ((rho * b.width).sinh(), (rho * b.width).cosh());
        let (p, m) = (rho / k + k / rho, rho / k - k / rho);
        let den = 2.0 * ch + I * m * sh;
        let r = -I * p * sh / den;
        let t = 2.0 * (-I * k * b.width).exp() / den;
        let s = rt_rect(&b, e).unwrap();
        assert!(rel_diff(s.r, r) < 1e-12 && rel_diff(s.t, t) < 1e-12);
        let textbook = 4.0 / (4.0 + p * p * sh * sh);
        assert!((s.transmittance() - textbook).abs() < 1e-12);
    }

    #[test]
    fn opaque_limit() {
        let s = rt_rect(&barrier(10.0, 50.0), 1.0 * EV).unwrap();
        assert!(s.transmittance() < 1e-100);
        assert!((s.r.norm() - 1.0).abs() < 1e-14);
        // far past cosh overflow
        let s = rt_rect(&barrier(10.0, 5000.0), 1.0 * EV).unwrap();
        assert!(s.r.is_finite() && s.t.is_finite());
        assert!((s.r.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn continuity_across_top() {
        let vb = 2.0 * EV;
        let b = QmBarrier::new(vb, 0.8e-9, ME).unwrap();
        let up = rt_rect(&b, vb * (1.0 + 1e-9)).unwrap();
        let down = rt_rect(&b, vb * (1.0 - 1e-9)).unwrap();
        assert!(up.max_abs_diff(&down) < 1e-5);
    }

    #[test]
    fn delta_symmetric_point() {
        let k = 1e9;
        // ħ²γ/m = 1 ⇒ λ = ħ²k/m
        let d = DeltaBarrier::new(HBAR * HBAR * k / ME, ME).unwrap();
        assert!((d.coupling(k) - 1.0).abs() < 1e-14);
        let s = rt_delta(&d, k).unwrap();
        assert!((s.reflectance() - 0.5).abs() < 1e-14);
        assert!((s.transmittance() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn delta_limits() {
        let k = 1e9;
        let weak = DeltaBarrier::new(1e-12 * HBAR * HBAR * k / ME, ME).unwrap();
        let s = rt_delta(&weak, k).unwrap();
        assert!(s.r.norm() < 1e-11 && (s.t - ONE).norm() < 1e-11);
        let strong = DeltaBarrier::new(1e12 * HBAR * HBAR * k / ME, ME).unwrap();
        let s = rt_delta(&strong, k).unwrap();
        assert!(s.t.norm() < 1e-11 && (s.r.norm() - 1.0).abs() < 1e-11);
        assert_eq!(rt_delta(&weak, 0.0), Err(QmError::NonPositiveWavenumber(0.0)));
    }

    #[test]
    fn delta_matches_textbook_phase() {
        // t = 1/(1 + i mλ/(ħ²k)), r = t - 1
        let k = 2e9;
        let d = DeltaBarrier::new(0.37 * EV * 1e-9, ME).unwrap();
        let s = rt_delta(&d, k).unwrap();
        let t = 1.0 / (1.0 + I * ME * d.strength / (HBAR * HBAR * k));
        assert!((s.t - t).norm() < 1e-14 && (s.r - (t - 1.0)).norm() < 1e-14);
    }

    fn unit_coupling_area(e: f64) -> f64 {
        let k = free_wavenumber(e, ME).unwrap();
        HBAR * HBAR * k / ME
    }

    #[test]
    fn delta_schedule_converges() {
        let e = 1.0 * EV;
        let area = unit_coupling_area(e);
        let steps = delta_limit_schedule(e, area, &[1e4 * e], ME).unwrap();
        assert!((steps[0].rect.transmittance() - 0.5).abs() < 1e-2);
        assert!(steps[0].rect.flux_defect() < 1e-12);
        let hs: Vec<f64> = (0..8).map(|i| 10.0 * e * 2f64.powi(i)).collect();
        let steps = delta_limit_schedule(e, area, &hs, ME).unwrap();
        let errs: Vec<f64> = steps
            .iter()
            .map(|s| (s.rect.transmittance() - s.delta.transmittance()).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn delta_schedule_rejects_low_heights() {
        let e = 1.0 * EV;
        let r = delta_limit_schedule(e, unit_coupling_area(e), &[0.5 * e], ME);
        assert!(matches!(r, Err(QmError::HeightNotAboveEnergy { .. })));
    }

    #[test]
    fn cascade_basics() {
        let m = transfer_matrix_rect(&barrier(2.0, 0.4), EV).unwrap();
        assert_eq!(cascade(&[m]).unwrap(), m);
        assert_eq!(
            cascade(&[TransferMatrix2::IDENTITY, TransferMatrix2::IDENTITY]).unwrap(),
            TransferMatrix2::IDENTITY
        );
        assert_eq!(cascade(&[]), Err(QmError::EmptyList));
        let _ = ZERO;
    }

    #[test]
    fn two_halves_equal_whole() {
        for (e, vb) in [(1.0, 4.0), (5.0, 2.0), (1.0, -2.0)] {
            let layers = [
                QmLayer {
                    height: vb * EV,
                    width: 0.6e-9,
                },
                QmLayer {
                    height: vb * EV,
                    width: 0.6e-9,
                },
            ];
            let whole = transfer_matrix_rect(&barrier(vb, 1.2), e * EV).unwrap();
            let split = transfer_matrix_piecewise(&layers, e * EV, ME).unwrap();
            assert!(split.max_rel_diff(&whole) < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn flux_conserved(e in 0.01f64..10.0, vb in -5.0f64..10.0, l in 0.0f64..5.0) {
            let s = rt_rect(&barrier(vb, l), e * EV).unwrap();
            prop_assert!(s.flux_defect() < 1e-12);
        }

        // the determinant is evaluated in floating point from entries of size
        // cosh(ρL), so keep ρL of order one
        #[test]
        fn determinant_and_symmetry(e in 0.05f64..5.0, vb in -5.0f64..5.0, l in 0.0f64..0.3) {
            let b = barrier(vb, l);
            let m = transfer_matrix_rect(&b, e * EV).unwrap();
            prop_assert!((m.det() - ONE).norm() < 1e-12);
            prop_assert!((m.m22 - m.m11.conj()).norm() < 1e-12 * m.m11.norm().max(1.0));
            prop_assert!((m.m21 - m.m12.conj()).norm() < 1e-12 * m.m11.norm().max(1.0));
        }
    }
}

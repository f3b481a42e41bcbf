//! Effective-medium model of a two-dimensional array of thin wires
//! (Brown's artificial dielectric), plus the equivalent quantum barrier
//! seen by a photon in it.
//!
//! Wires of radius `r` sit on a rectangular lattice with pitch `a` across the
//! propagation direction and `b` along it; the electric field is parallel to
//! the wires. Below its plasma-like frequency the array has `ε < 0` and the
//! wave is evanescent.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use roots::{find_root_brent, Convergency};
use thiserror::Error;

use crate::cmath::{acos_parts, c, sincospi, tan};
use crate::em::{EmError, Slab};
use crate::units::{free_space_wavelength, PLANCK, SPEED_OF_LIGHT};

/// Upper end of the transverse-pitch search in [`solve_lattice_a`] (m).
pub const LATTICE_A_MAX: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WireError {
    #[error("wire geometry violates 0 < 2πr < a (r = {radius} m, a = {pitch} m)")]
    GeometryViolation { radius: f64, pitch: f64 },
    #[error("invalid wire array: {0}")]
    InvalidSpec(&'static str),
    #[error("frequency must be positive (got {0} Hz)")]
    NonPositiveFrequency(f64),
    #[error("tangent pole in the impedance at n = {0}")]
    TangentPole(Complex64),
    #[error("impedance is zero")]
    ZeroImpedance,
    #[error("no root of the lattice equation in the search bracket")]
    NoRootInBracket,
    #[error("no frequency in [{lo}, {hi}] Hz satisfies the requested energy ratio")]
    NoCrossingInBand { lo: f64, hi: f64 },
    #[error(transparent)]
    Em(#[from] EmError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireArray {
    /// Wire radius `r` (m).
    pub radius: f64,
    /// Transverse pitch `a` (m).
    pub pitch_transverse: f64,
    /// Longitudinal pitch `b` (m).
    pub pitch_longitudinal: f64,
    /// Number of wire rows `N` along the propagation direction.
    pub rows: u32,
}

impl WireArray {
    pub fn new(radius: f64, a: f64, b: f64, rows: u32) -> Result<Self, WireError> {
        let spec = Self {
            radius,
            pitch_transverse: a,
            pitch_longitudinal: b,
            rows,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Convenience constructor taking millimetres.
    pub fn from_mm(r_mm: f64, a_mm: f64, b_mm: f64, rows: u32) -> Result<Self, WireError> {
        Self::new(r_mm * 1e-3, a_mm * 1e-3, b_mm * 1e-3, rows)
    }

    pub fn validate(&self) -> Result<(), WireError> {
        let (r, a, b) = (self.radius, self.pitch_transverse, self.pitch_longitudinal);
        if !(r > 0.0) || !(2.0 * PI * r < a) || !a.is_finite() {
            return Err(WireError::GeometryViolation { radius: r, pitch: a });
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(WireError::InvalidSpec("longitudinal pitch must be positive"));
        }
        if self.rows == 0 {
            return Err(WireError::InvalidSpec("at least one row of wires is required"));
        }
        Ok(())
    }

    /// Slab thickness `N·b`.
    pub fn thickness(&self) -> f64 {
        self.rows as f64 * self.pitch_longitudinal
    }

    pub fn with_radius(&self, radius: f64) -> Self {
        Self { radius, ..*self }
    }

    pub fn with_rows(&self, rows: u32) -> Self {
        Self { rows, ..*self }
    }
}

fn check_frequency(f: f64) -> Result<(), WireError> {
    if !(f > 0.0) || !f.is_finite() {
        return Err(WireError::NonPositiveFrequency(f));
    }
    Ok(())
}

/// Refractive index of the array at frequency `f`.
pub fn brown_index(spec: &WireArray, f: f64) -> Result<Complex64, WireError> {
    check_frequency(f)?;
    brown_index_at_wavelength(spec, free_space_wavelength(f))
}

/// Refractive index at free-space wavelength `lambda0`:
///
/// `n = (λ₀/2πb)·arccos[cos(2πb/λ₀) + (λ₀/2a)·sin(2πb/λ₀)/ln(a/2πr)]`
///
/// The branch is the one with `Im n ≥ 0`, and `n ≥ 0` where `n` is real.
pub fn brown_index_at_wavelength(spec: &WireArray, lambda0: f64) -> Result<Complex64, WireError> {
    spec.validate()?;
    let (r, a, b) = (spec.radius, spec.pitch_transverse, spec.pitch_longitudinal);
    let coupling = lambda0 / (2.0 * a) / (a / (2.0 * PI * r)).ln();
    // half-angle forms of 1 ∓ [cos x + C sin x] with x = 2πb/λ₀, which stay
    // accurate where the bracket is close to ±1
    let (s, co) = sincospi(b / lambda0);
    let one_minus = 2.0 * s * (s - coupling * co);
    let one_plus = 2.0 * co * (co + coupling * s);
    let mut theta = acos_parts(c(one_minus, 0.0), c(one_plus, 0.0));
    if theta.im < 0.0 {
        theta = -theta;
        if theta.re < 0.0 {
            // bracket below -1: stop band with Re(n k₀ b) = π
            theta += 2.0 * PI;
        }
    }
    Ok(theta / PI * (lambda0 / (2.0 * b)))
}

/// Normalized impedance `Z = tan(πb/λ₀)/tan(πbn/λ₀)`.
pub fn brown_impedance(spec: &WireArray, f: f64, n: Complex64) -> Result<Complex64, WireError> {
    check_frequency(f)?;
    spec.validate()?;
    let u = spec.pitch_longitudinal / free_space_wavelength(f);
    let arg = n * (PI * u);
    for x in [c(PI * u, 0.0), arg] {
        let m = (x.re / PI - 0.5).round();
        if (x - c((m + 0.5) * PI, 0.0)).norm() < 1e-12 {
            return Err(WireError::TangentPole(n));
        }
    }
    let den = tan(arg);
    if den.norm() == 0.0 {
        return Err(WireError::ZeroImpedance);
    }
    Ok(tan(c(PI * u, 0.0)) / den)
}

/// `ε = n/Z`.
pub fn permittivity(n: Complex64, z: Complex64) -> Result<Complex64, WireError> {
    if z.norm() == 0.0 {
        return Err(WireError::ZeroImpedance);
    }
    Ok(n / z)
}

/// `μ = n·Z`.
pub fn permeability(n: Complex64, z: Complex64) -> Complex64 {
    n * z
}

/// Sign class of a medium by the real parts of `ε` and `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MediumClass {
    DoublePositive,
    EpsilonNegative,
    MuNegative,
    DoubleNegative,
}

pub fn classify(eps: Complex64, mu: Complex64) -> MediumClass {
    match (eps.re < 0.0, mu.re < 0.0) {
        (false, false) => MediumClass::DoublePositive,
        (true, false) => MediumClass::EpsilonNegative,
        (false, true) => MediumClass::MuNegative,
        (true, true) => MediumClass::DoubleNegative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumResponse {
    pub frequency: f64,
    pub n: Complex64,
    pub z: Complex64,
    pub eps: Complex64,
    pub mu: Complex64,
}

impl MediumResponse {
    /// The array as a homogeneous slab of thickness `N·b`.
    pub fn slab(&self, thickness: f64) -> Result<Slab, WireError> {
        Ok(Slab::new(self.n, self.z, thickness)?)
    }
}

/// Index, impedance and the derived `ε`, `μ` at one frequency.
pub fn respond(spec: &WireArray, f: f64) -> Result<MediumResponse, WireError> {
    let n = brown_index(spec, f)?;
    let z = brown_impedance(spec, f, n)?;
    Ok(MediumResponse {
        frequency: f,
        n,
        z,
        eps: permittivity(n, z)?,
        mu: permeability(n, z),
    })
}

/// Quantum quantities assigned to a photon crossing the array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveBarrier {
    /// `E_p = hf` (J).
    pub photon_energy: f64,
    /// Real barrier height `V_b` (J).
    pub height: f64,
    /// Contribution of `Im(n²)` to the barrier height, dropped from `height` (J).
    pub loss: f64,
    /// `m_eff = hf/c₀²` (kg).
    pub effective_mass: f64,
    /// `N·b` (m).
    pub thickness: f64,
    pub n: Complex64,
}

/// `E_p = hf`
pub fn photon_energy(f: f64) -> f64 {
    PLANCK * f
}

/// `m_eff = hf/c₀²`
pub fn effective_photon_mass(f: f64) -> f64 {
    PLANCK * f / (SPEED_OF_LIGHT * SPEED_OF_LIGHT)
}

pub fn effective_barrier(spec: &WireArray, f: f64) -> Result<EffectiveBarrier, WireError> {
    let n = brown_index(spec, f)?;
    Ok(effective_barrier_for_index(n, f, spec.thickness()))
}

/// `V_b = E_p − h²f²n²/(2 m_eff c₀²)` keeping only `Re(n²)`.
pub fn effective_barrier_for_index(n: Complex64, f: f64, thickness: f64) -> EffectiveBarrier {
    let ep = photon_energy(f);
    let m_eff = effective_photon_mass(f);
    let n2 = n * n;
    let scale = PLANCK * PLANCK * f * f / (2.0 * m_eff * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    EffectiveBarrier {
        photon_energy: ep,
        height: ep - scale * n2.re,
        loss: -scale * n2.im,
        effective_mass: m_eff,
        thickness,
        n,
    }
}

/// Stops on bracket width only; residuals here are tiny in SI units.
struct BracketWidth(f64);

impl Convergency<f64> for BracketWidth {
    fn is_root_found(&mut self, y: f64) -> bool {
        y == 0.0
    }
    fn is_converged(&mut self, x1: f64, x2: f64) -> bool {
        (x1 - x2).abs() < self.0
    }
    fn is_iteration_limit_reached(&mut self, iter: usize) -> bool {
        iter >= 500
    }
}

fn brent<F: FnMut(f64) -> f64>(lo: f64, hi: f64, x_tol: f64, f: F) -> Option<f64> {
    find_root_brent(lo, hi, f, &mut BracketWidth(x_tol)).ok()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSolution {
    /// Transverse pitch `a` (m).
    pub a: f64,
    /// Set when a sign scan of the bracket found more than one root.
    pub multiple_roots: bool,
}

/// `V_b·b` for one row of wires.
pub fn barrier_area(r_wire: f64, a: f64, b: f64, f: f64) -> Result<f64, WireError> {
    let spec = WireArray::new(r_wire, a, b, 1)?;
    Ok(effective_barrier(&spec, f)?.height * b)
}

/// Transverse pitch `a` that gives `V_b·b = target` at longitudinal pitch `b`.
pub fn solve_lattice_a(b: f64, target: f64, f: f64, r_wire: f64) -> Result<LatticeSolution, WireError> {
    check_frequency(f)?;
    let lo = 2.0 * PI * r_wire * (1.0 + 1e-6);
    let hi = LATTICE_A_MAX;
    if !(lo < hi) {
        return Err(WireError::GeometryViolation {
            radius: r_wire,
            pitch: hi,
        });
    }
    let g = |a: f64| barrier_area(r_wire, a, b, f).map(|v| v - target);
    // log-spaced sign scan to detect multiple roots
    let samples = 400;
    let mut crossings = 0;
    let mut bracket = None;
    let mut prev = (lo, g(lo)?);
    for i in 1..=samples {
        let a = lo * (hi / lo).powf(i as f64 / samples as f64);
        let v = g(a)?;
        if v == 0.0 || v.signum() != prev.1.signum() {
            crossings += 1;
            bracket.get_or_insert((prev.0, a));
        }
        prev = (a, v);
    }
    let (blo, bhi) = bracket.ok_or(WireError::NoRootInBracket)?;
    let a = brent(blo, bhi, 1e-15, |a| g(a).unwrap_or(f64::NAN)).ok_or(WireError::NoRootInBracket)?;
    let multiple_roots = crossings > 1;
    if multiple_roots {
        warn!("lattice equation has {crossings} roots in the bracket; returning the smallest");
    }
    Ok(LatticeSolution { a, multiple_roots })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeRow {
    pub b: f64,
    pub a: f64,
    pub area: f64,
}

/// Pitches that hold `V_b·b` at the value of an anchor geometry while `b`
/// shrinks, as used to approach the delta-function limit.
pub fn lattice_schedule(
    anchor_a: f64,
    anchor_b: f64,
    bs: &[f64],
    f: f64,
    r_wire: f64,
) -> Result<Vec<LatticeRow>, WireError> {
    let target = barrier_area(r_wire, anchor_a, anchor_b, f)?;
    bs.iter()
        .map(|&b| {
            let a = if b == anchor_b {
                anchor_a
            } else {
                solve_lattice_a(b, target, f, r_wire)?.a
            };
            Ok(LatticeRow {
                b,
                a,
                area: barrier_area(r_wire, a, b, f)?,
            })
        })
        .collect()
}

/// Reference delta-limit lattice: 3 GHz, 40 µm wires, anchored at
/// `a = b = 10 mm`, with `b` stepping down to 1 mm.
pub fn table1() -> Result<Vec<LatticeRow>, WireError> {
    let bs: Vec<f64> = (1..=10).rev().map(|mm| mm as f64 * 1e-3).collect();
    lattice_schedule(10e-3, 10e-3, &bs, 3e9, 0.04e-3)
}

/// Frequency in `[lo, hi]` where `Re(ε)` (equivalently `Re(n²)`) changes sign.
pub fn eps_zero_crossing(spec: &WireArray, lo: f64, hi: f64) -> Result<f64, WireError> {
    let g = |f: f64| brown_index(spec, f).map(|n| (n * n).re);
    let (glo, ghi) = (g(lo)?, g(hi)?);
    if glo.signum() == ghi.signum() {
        return Err(WireError::NoCrossingInBand { lo, hi });
    }
    brent(lo, hi, 1e-13 * hi, |f| g(f).unwrap_or(f64::NAN)).ok_or(WireError::NoCrossingInBand { lo, hi })
}

/// Frequency in `[lo, hi]` at which `E_p = ratio·V_b`.
pub fn frequency_for_energy_ratio(spec: &WireArray, ratio: f64, lo: f64, hi: f64) -> Result<f64, WireError> {
    let g = |f: f64| effective_barrier(spec, f).map(|e| e.photon_energy - ratio * e.height);
    let (glo, ghi) = (g(lo)?, g(hi)?);
    if glo.signum() == ghi.signum() {
        return Err(WireError::NoCrossingInBand { lo, hi });
    }
    brent(lo, hi, 1e-13 * hi, |f| g(f).unwrap_or(f64::NAN)).ok_or(WireError::NoCrossingInBand { lo, hi })
}

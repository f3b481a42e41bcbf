//! Map the frequency-dependent index of an electromagnetic medium onto an
//! equivalent quantum barrier problem and compare the two sets of
//! coefficients.
//!
//! Sample `i` of an index series `(fᵢ, nᵢ)` is assigned a quantum wavenumber
//! `kᵢ` on a grid linear in the sample index. The barrier wavenumber is
//! `qᵢ = kᵢ·nᵢ` and the width `Lᵢ = k₀ᵢ·d/kᵢ`, so `qᵢ/kᵢ = nᵢ` and
//! `kᵢLᵢ = k₀ᵢd`: the coefficients do not depend on the grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::em::{solve_sparams, EmError, EmWave, Slab};
use crate::nrw::ExtractedParams;
use crate::qm::{energy_of_wavenumber, rt_from_wavenumbers};
use crate::scatter::ScatterResult;
use crate::units::{free_space_wavenumber, ELECTRON_MASS, PLANCK, SPEED_OF_LIGHT};
use crate::wire::{effective_barrier, respond, WireArray, WireError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("index series is empty")]
    EmptySeries,
    #[error("invalid mapping configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("sample at {0} Hz has no impedance; physical comparison needs one")]
    MissingImpedance(f64),
    #[error(transparent)]
    Em(#[from] EmError),
    #[error(transparent)]
    Wire(#[from] WireError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingConfig {
    /// Lowest quantum wavenumber (1/m).
    pub k_min: f64,
    /// Highest quantum wavenumber (1/m).
    pub k_max: f64,
    /// Particle mass (kg).
    #[serde(default = "default_mass")]
    pub mass: f64,
}

fn default_mass() -> f64 {
    ELECTRON_MASS
}

impl Default for MappingConfig {
    /// Electron with wavelengths from about 6 nm down to 0.6 nm.
    fn default() -> Self {
        Self {
            k_min: 1e9,
            k_max: 1e10,
            mass: ELECTRON_MASS,
        }
    }
}

impl MappingConfig {
    pub fn validate(&self) -> Result<(), MapError> {
        if !(self.k_min > 0.0 && self.k_min < self.k_max && self.k_max.is_finite()) {
            return Err(MapError::InvalidConfig("need 0 < k_min < k_max"));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(MapError::InvalidConfig("mass must be positive"));
        }
        Ok(())
    }

    /// `k` of sample `i` out of `count`.
    pub fn wavenumber(&self, i: usize, count: usize) -> f64 {
        if count <= 1 {
            return self.k_min;
        }
        self.k_min + (self.k_max - self.k_min) * i as f64 / (count - 1) as f64
    }
}

/// One electromagnetic sample: frequency, index and (optionally) impedance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexSample {
    pub frequency: f64,
    pub n: Complex64,
    pub z: Option<Complex64>,
}

/// Index and impedance of a wire array on a frequency grid.
pub fn wire_samples(spec: &WireArray, freqs: &[f64]) -> Result<Vec<IndexSample>, WireError> {
    freqs
        .iter()
        .map(|&f| {
            let m = respond(spec, f)?;
            Ok(IndexSample {
                frequency: f,
                n: m.n,
                z: Some(m.z),
            })
        })
        .collect()
}

/// Index and impedance recovered from S-parameters; gaps are dropped.
pub fn extracted_samples(params: &ExtractedParams) -> Vec<IndexSample> {
    params
        .values()
        .map(|e| IndexSample {
            frequency: e.frequency,
            n: e.n,
            z: Some(e.z),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MappedSample {
    pub k: f64,
    /// `E₀ = ħ²k²/2m` (J).
    pub energy: f64,
    /// `ν = c₀k/2π` (Hz).
    pub nu: f64,
    /// `V_b = E₀ − h²ν²·Re(n²)/(2mc₀²)` (J).
    pub height: f64,
    pub q: Complex64,
    pub width: f64,
    /// `Re(n²) < 0`: evanescent in the medium, tunnelling in the barrier.
    pub below_barrier: bool,
    pub k0: f64,
    pub source: IndexSample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappedQmSystem {
    pub samples: Vec<MappedSample>,
    /// Electromagnetic slab thickness `d` (m).
    pub thickness: f64,
    pub config: MappingConfig,
}

pub fn em_to_qm(series: &[IndexSample], d: f64, cfg: &MappingConfig) -> Result<MappedQmSystem, MapError> {
    cfg.validate()?;
    if series.is_empty() {
        return Err(MapError::EmptySeries);
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(MapError::InvalidConfig("thickness must be positive"));
    }
    let m = cfg.mass;
    let samples = series
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let k = cfg.wavenumber(i, series.len());
            let energy = energy_of_wavenumber(k, m);
            let nu = SPEED_OF_LIGHT * k / (2.0 * std::f64::consts::PI);
            let n2 = s.n * s.n;
            let height = energy - PLANCK * PLANCK * nu * nu * n2.re / (2.0 * m * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
            let k0 = free_space_wavenumber(s.frequency);
            MappedSample {
                k,
                energy,
                nu,
                height,
                q: s.n * k,
                width: k0 * d / k,
                below_barrier: n2.re < 0.0,
                k0,
                source: *s,
            }
        })
        .collect();
    Ok(MappedQmSystem {
        samples,
        thickness: d,
        config: *cfg,
    })
}

pub fn mapped_coefficients(sys: &MappedQmSystem) -> Vec<ScatterResult> {
    sys.samples
        .iter()
        .map(|s| rt_from_wavenumbers(s.k, s.q, s.width))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquivalenceMode {
    /// Slab impedance set to `q/k = n`.
    Formal,
    /// Slab impedance taken from the medium.
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleDeviation {
    pub frequency: f64,
    pub qm: ScatterResult,
    pub em: ScatterResult,
    pub dev_r: f64,
    pub dev_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub mode: EquivalenceMode,
    pub samples: Vec<SampleDeviation>,
    pub max_abs_dev_r: f64,
    pub max_abs_dev_t: f64,
}

pub fn equivalence_check(sys: &MappedQmSystem, mode: EquivalenceMode) -> Result<EquivalenceReport, MapError> {
    let qm = mapped_coefficients(sys);
    let samples = sys
        .samples
        .iter()
        .zip(qm)
        .map(|(s, qm)| {
            let z = match mode {
                EquivalenceMode::Formal => s.q / s.k,
                EquivalenceMode::Physical => s.source.z.ok_or(MapError::MissingImpedance(s.source.frequency))?,
            };
            let slab = Slab::new(s.source.n, z, sys.thickness)?;
            let em: ScatterResult = solve_sparams(&slab, &EmWave::new(s.source.frequency)?)?.into();
            Ok(SampleDeviation {
                frequency: s.source.frequency,
                qm,
                em,
                dev_r: (qm.r - em.r).norm(),
                dev_t: (qm.t - em.t).norm(),
            })
        })
        .collect::<Result<Vec<_>, MapError>>()?;
    Ok(EquivalenceReport {
        mode,
        max_abs_dev_r: samples.iter().map(|s| s.dev_r).fold(0.0, f64::max),
        max_abs_dev_t: samples.iter().map(|s| s.dev_t).fold(0.0, f64::max),
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveViewRow {
    pub frequency: f64,
    pub photon_energy: f64,
    pub height: f64,
}

/// Photon energy and effective barrier height on a frequency grid.
pub fn em_effective_view(spec: &WireArray, freqs: &[f64]) -> Result<Vec<EffectiveViewRow>, WireError> {
    freqs
        .iter()
        .map(|&f| {
            let e = effective_barrier(spec, f)?;
            Ok(EffectiveViewRow {
                frequency: f,
                photon_energy: e.photon_energy,
                height: e.height,
            })
        })
        .collect()
}

/// Indices `i` where `E_p − V_b` changes sign between rows `i` and `i + 1`.
pub fn energy_crossings(rows: &[EffectiveViewRow]) -> Vec<usize> {
    rows.windows(2)
        .enumerate()
        .filter(|(_, w)| {
            let a = w[0].photon_energy - w[0].height;
            let b = w[1].photon_energy - w[1].height;
            (a < 0.0) != (b < 0.0)
        })
        .map(|(i, _)| i)
        .collect()
}

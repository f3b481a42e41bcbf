//! Parameter sweeps producing tables of coefficients.
//!
//! Rows are computed in parallel and returned in axis order. The worker
//! count can be capped with the `ANALOG_BENCH_THREADS` environment variable.

use std::collections::BTreeMap;

use log::warn;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::em::{solve_sparams, EmError, EmWave};
use crate::mapping::{
    em_to_qm, equivalence_check, wire_samples, EquivalenceMode, IndexSample, MapError, MappingConfig,
};
use crate::qm::{delta_limit_schedule, rt_from_wavenumbers, rt_rect, QmBarrier, QmError};
use crate::units::{free_space_wavelength, ELECTRON_MASS, ELECTRON_VOLT};
use crate::wire::{
    effective_barrier_for_index, frequency_for_energy_ratio, lattice_schedule, respond, WireArray, WireError,
};

pub const THREADS_ENV: &str = "ANALOG_BENCH_THREADS";
/// Frequency of the wire-radius sweep unless overridden (Hz).
pub const DEFAULT_RADIUS_FREQUENCY: f64 = 9e9;
pub const DEFAULT_FREQUENCY_POINTS: usize = 300;
pub const DEFAULT_RADIUS_POINTS: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("invalid sweep axis: {0}")]
    InvalidAxis(&'static str),
    #[error(transparent)]
    Wire(#[from] WireError),
    #[error(transparent)]
    Qm(#[from] QmError),
    #[error(transparent)]
    Em(#[from] EmError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: BTreeMap<String, Value>,
}

impl SweepTable {
    pub fn new(columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows,
            metadata,
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.metadata.insert(key.into(), value);
        self
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of one column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn check_axis(axis: &[f64]) -> Result<(), SweepError> {
    if axis.is_empty() {
        return Err(SweepError::InvalidAxis("axis is empty"));
    }
    if axis.iter().any(|x| !x.is_finite()) {
        return Err(SweepError::InvalidAxis("axis has non-finite values"));
    }
    let up = axis.windows(2).all(|w| w[1] > w[0]);
    let down = axis.windows(2).all(|w| w[1] < w[0]);
    if !(up || down) {
        return Err(SweepError::InvalidAxis("axis is not strictly monotone"));
    }
    Ok(())
}

fn thread_cap() -> Option<usize> {
    let raw = std::env::var(THREADS_ENV).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Some(n),
        _ => {
            warn!("ignoring {THREADS_ENV}={raw:?}: expected a positive integer");
            None
        }
    }
}

/// Map `f` over `items` in parallel, keeping input order.
fn par_rows<T, F>(items: &[T], f: F) -> Result<Vec<Vec<f64>>, SweepError>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<f64>, SweepError> + Sync + Send,
{
    let run = || items.par_iter().map(&f).collect::<Result<Vec<_>, _>>();
    match thread_cap().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

fn wire_meta(spec: &WireArray) -> Value {
    json!({
        "r_wire_m": spec.radius,
        "a_m": spec.pitch_transverse,
        "b_m": spec.pitch_longitudinal,
        "rows": spec.rows,
    })
}

fn complex_meta(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Permittivity, index, energies and slab power coefficients vs frequency.
pub fn sweep_frequency(spec: &WireArray, freqs: &[f64]) -> Result<SweepTable, SweepError> {
    check_axis(freqs)?;
    spec.validate()?;
    let d = spec.thickness();
    let rows = par_rows(freqs, |&f| {
        let m = respond(spec, f)?;
        let sp = solve_sparams(&m.slab(d)?, &EmWave::new(f)?)?;
        let e = effective_barrier_for_index(m.n, f, d);
        Ok(vec![
            f,
            m.eps.re,
            m.eps.im,
            m.n.re,
            m.n.im,
            e.photon_energy,
            e.height,
            sp.s11.norm_sqr(),
            sp.s21.norm_sqr(),
        ])
    })?;
    Ok(SweepTable::new(
        &[
            "f_hz", "eps_re", "eps_im", "n_re", "n_im", "ep_j", "vb_j", "s11_sq", "s21_sq",
        ],
        rows,
    )
    .with("kind", json!("frequency"))
    .with("wire", wire_meta(spec)))
}

/// Permittivity, barrier height and slab `T`, `R` vs wire radius at fixed
/// frequency.
pub fn sweep_wire_radius(base: &WireArray, radii: &[f64], f: f64) -> Result<SweepTable, SweepError> {
    check_axis(radii)?;
    let rows = par_rows(radii, |&r| {
        let spec = base.with_radius(r);
        spec.validate()?;
        let m = respond(&spec, f)?;
        let sp = solve_sparams(&m.slab(spec.thickness())?, &EmWave::new(f)?)?;
        let e = effective_barrier_for_index(m.n, f, spec.thickness());
        Ok(vec![
            r,
            m.eps.re,
            m.eps.im,
            e.height / e.photon_energy,
            sp.s21.norm_sqr(),
            sp.s11.norm_sqr(),
        ])
    })?;
    Ok(
        SweepTable::new(&["r_wire_m", "eps_re", "eps_im", "vb_over_ep", "t", "r"], rows)
            .with("kind", json!("wire_radius"))
            .with("frequency_hz", json!(f))
            .with("wire", wire_meta(base)),
    )
}

/// Slab `T`, `R` vs number of wire rows at the frequency where
/// `E_p = ratio·V_b`.
pub fn sweep_width(
    base: &WireArray,
    ratio: f64,
    rows_axis: &[u32],
    band: (f64, f64),
) -> Result<SweepTable, SweepError> {
    if rows_axis.is_empty() || rows_axis.contains(&0) || !rows_axis.windows(2).all(|w| w[1] > w[0]) {
        return Err(SweepError::InvalidAxis("row counts must be positive and increasing"));
    }
    let f = frequency_for_energy_ratio(base, ratio, band.0, band.1)?;
    let m = respond(base, f)?;
    let lambda0 = free_space_wavelength(f);
    let wave = EmWave::new(f)?;
    let rows = par_rows(rows_axis, |&count| {
        let l = count as f64 * base.pitch_longitudinal;
        let sp = solve_sparams(&m.slab(l)?, &wave)?;
        Ok(vec![
            count as f64,
            l,
            l / lambda0,
            (m.n * wave.k0 * l).norm(),
            sp.s21.norm_sqr(),
            sp.s11.norm_sqr(),
        ])
    })?;
    Ok(
        SweepTable::new(&["rows", "l_m", "l_over_lambda", "kappa_l", "t", "r"], rows)
            .with("kind", json!("width"))
            .with("ratio", json!(ratio))
            .with("frequency_hz", json!(f))
            .with("n", complex_meta(m.n))
            .with("z", complex_meta(m.z))
            .with("wire", wire_meta(base))
            .with("note", json!("lossless model: no conductor-loss amplitude decay")),
    )
}

/// Rectangular barrier at `E = ratio·V_b` vs width in units of the incident
/// de Broglie wavelength.
pub fn sweep_width_qm(ratio: f64, l_over_lambda: &[f64]) -> Result<SweepTable, SweepError> {
    check_axis(l_over_lambda)?;
    if !(ratio > 0.0) {
        return Err(SweepError::InvalidAxis("energy ratio must be positive"));
    }
    let k = 2.0 * std::f64::consts::PI;
    let q = k * Complex64::new(1.0 - 1.0 / ratio, 0.0).sqrt();
    let rows = par_rows(l_over_lambda, |&x| {
        let rt = rt_from_wavenumbers(k, q, x);
        Ok(vec![x, (q * x).norm(), rt.transmittance(), rt.reflectance()])
    })?;
    Ok(SweepTable::new(&["l_over_lambda", "kappa_l", "t", "r"], rows)
        .with("kind", json!("width_qm"))
        .with("ratio", json!(ratio)))
}

/// Rectangular barrier `T`, `R` vs height at fixed energy and width.
pub fn sweep_barrier_height(energy: f64, width: f64, heights: &[f64], mass: f64) -> Result<SweepTable, SweepError> {
    check_axis(heights)?;
    let rows = par_rows(heights, |&vb| {
        let rt = rt_rect(&QmBarrier::new(vb, width, mass)?, energy)?;
        Ok(vec![vb, vb / energy, rt.transmittance(), rt.reflectance()])
    })?;
    Ok(SweepTable::new(&["vb_j", "vb_over_e", "t", "r"], rows)
        .with("kind", json!("barrier_height"))
        .with("energy_j", json!(energy))
        .with("width_m", json!(width))
        .with("mass_kg", json!(mass)))
}

/// Constant-area approach to the delta barrier.
pub fn sweep_delta(energy: f64, area: f64, heights: &[f64], mass: f64) -> Result<SweepTable, SweepError> {
    check_axis(heights)?;
    let steps = delta_limit_schedule(energy, area, heights, mass)?;
    let rows = steps
        .iter()
        .map(|s| {
            vec![
                s.height,
                s.width,
                s.rect.transmittance(),
                s.rect.reflectance(),
                s.delta.transmittance(),
                s.delta.reflectance(),
            ]
        })
        .collect();
    Ok(SweepTable::new(&["vb_j", "l_m", "t", "r", "t_delta", "r_delta"], rows)
        .with("kind", json!("delta"))
        .with("energy_j", json!(energy))
        .with("area_j_m", json!(area))
        .with("mass_kg", json!(mass)))
}

/// Electromagnetic side of the delta limit: pitches holding `V_b·b` fixed and
/// the single-row slab `T`, `R` for each.
pub fn sweep_lattice(anchor_a: f64, anchor_b: f64, bs: &[f64], f: f64, r_wire: f64) -> Result<SweepTable, SweepError> {
    check_axis(bs)?;
    let schedule = lattice_schedule(anchor_a, anchor_b, bs, f, r_wire)?;
    let wave = EmWave::new(f)?;
    let rows = par_rows(&schedule, |row| {
        let spec = WireArray::new(r_wire, row.a, row.b, 1)?;
        let m = respond(&spec, f)?;
        let sp = solve_sparams(&m.slab(row.b)?, &wave)?;
        Ok(vec![row.b, row.a, row.area, sp.s21.norm_sqr(), sp.s11.norm_sqr()])
    })?;
    Ok(SweepTable::new(&["b_m", "a_m", "vb_b_j_m", "t", "r"], rows)
        .with("kind", json!("lattice"))
        .with("frequency_hz", json!(f))
        .with("r_wire_m", json!(r_wire))
        .with("anchor", json!({ "a_m": anchor_a, "b_m": anchor_b })))
}

/// Reference delta-limit lattice (3 GHz, 40 µm wires, `b` = 10 … 1 mm).
pub fn sweep_table1() -> Result<SweepTable, SweepError> {
    let bs: Vec<f64> = (1..=10).rev().map(|mm| mm as f64 * 1e-3).collect();
    sweep_lattice(10e-3, 10e-3, &bs, 3e9, 0.04e-3)
}

/// Wire-array index mapped onto a quantum barrier, with the comparison
/// against the slab S-parameters.
pub fn sweep_mapping(
    spec: &WireArray,
    freqs: &[f64],
    cfg: &MappingConfig,
    mode: EquivalenceMode,
) -> Result<SweepTable, SweepError> {
    check_axis(freqs)?;
    let samples = wire_samples(spec, freqs)?;
    Ok(mapping_table(&samples, spec.thickness(), cfg, mode)?.with("wire", wire_meta(spec)))
}

/// Mapping and comparison table for any index series.
pub fn mapping_table(
    samples: &[IndexSample],
    d: f64,
    cfg: &MappingConfig,
    mode: EquivalenceMode,
) -> Result<SweepTable, SweepError> {
    let sys = em_to_qm(samples, d, cfg)?;
    let report = equivalence_check(&sys, mode)?;
    let rows = sys
        .samples
        .iter()
        .zip(&report.samples)
        .map(|(s, d)| {
            vec![
                s.source.frequency,
                s.k,
                s.energy,
                s.height,
                s.q.re,
                s.q.im,
                s.width,
                d.qm.transmittance(),
                d.qm.reflectance(),
                d.em.transmittance(),
                d.em.reflectance(),
                d.dev_r,
                d.dev_t,
            ]
        })
        .collect();
    Ok(SweepTable::new(
        &[
            "f_hz", "k", "e0_j", "vb_j", "q_re", "q_im", "l_m", "t_qm", "r_qm", "t_em", "r_em", "dev_r", "dev_t",
        ],
        rows,
    )
    .with("kind", json!("mapping"))
    .with("mode", serde_json::to_value(mode).unwrap_or(Value::Null))
    .with("max_abs_dev_r", json!(report.max_abs_dev_r))
    .with("max_abs_dev_t", json!(report.max_abs_dev_t))
    .with("thickness_m", json!(d)))
}

/// Wire-array geometry in millimetres, as written in configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireConfig {
    pub r_mm: f64,
    pub a_mm: f64,
    pub b_mm: f64,
    pub rows: u32,
}

impl WireConfig {
    pub fn to_spec(&self) -> Result<WireArray, WireError> {
        WireArray::from_mm(self.r_mm, self.a_mm, self.b_mm, self.rows)
    }
}

fn default_frequency_points() -> usize {
    DEFAULT_FREQUENCY_POINTS
}
fn default_radius_points() -> usize {
    DEFAULT_RADIUS_POINTS
}
fn default_radius_f_ghz() -> f64 {
    DEFAULT_RADIUS_FREQUENCY / 1e9
}
fn default_f_min_ghz() -> f64 {
    1.0
}
fn default_f_max_ghz() -> f64 {
    10.0
}
fn default_mass() -> f64 {
    ELECTRON_MASS
}
fn default_mode() -> EquivalenceMode {
    EquivalenceMode::Formal
}

/// A sweep as described in a configuration file. Field suffixes give units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepSpec {
    Frequency {
        wire: WireConfig,
        #[serde(default = "default_f_min_ghz")]
        f_min_ghz: f64,
        #[serde(default = "default_f_max_ghz")]
        f_max_ghz: f64,
        #[serde(default = "default_frequency_points")]
        points: usize,
    },
    WireRadius {
        wire: WireConfig,
        r_min_mm: f64,
        r_max_mm: f64,
        #[serde(default = "default_radius_points")]
        points: usize,
        #[serde(default = "default_radius_f_ghz")]
        f_ghz: f64,
    },
    BarrierHeight {
        energy_ev: f64,
        width_nm: f64,
        vb_min_ev: f64,
        vb_max_ev: f64,
        points: usize,
        #[serde(default = "default_mass")]
        mass_kg: f64,
    },
    Width {
        wire: WireConfig,
        ratio: f64,
        rows_min: u32,
        rows_max: u32,
        #[serde(default = "default_f_min_ghz")]
        f_min_ghz: f64,
        #[serde(default = "default_f_max_ghz")]
        f_max_ghz: f64,
    },
    WidthQm {
        ratio: f64,
        l_over_lambda_max: f64,
        points: usize,
    },
    Delta {
        energy_ev: f64,
        area_ev_nm: f64,
        heights_ev: Vec<f64>,
        #[serde(default = "default_mass")]
        mass_kg: f64,
    },
    Lattice,
    Mapping {
        wire: WireConfig,
        #[serde(default = "default_f_min_ghz")]
        f_min_ghz: f64,
        #[serde(default = "default_f_max_ghz")]
        f_max_ghz: f64,
        #[serde(default = "default_frequency_points")]
        points: usize,
        #[serde(default)]
        mapping: MappingConfig,
        #[serde(default = "default_mode")]
        mode: EquivalenceMode,
    },
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, SweepError> {
    let table = match spec {
        SweepSpec::Frequency {
            wire,
            f_min_ghz,
            f_max_ghz,
            points,
        } => sweep_frequency(&wire.to_spec()?, &linspace(f_min_ghz * 1e9, f_max_ghz * 1e9, *points))?,
        SweepSpec::WireRadius {
            wire,
            r_min_mm,
            r_max_mm,
            points,
            f_ghz,
        } => sweep_wire_radius(
            &wire.to_spec()?,
            &linspace(r_min_mm * 1e-3, r_max_mm * 1e-3, *points),
            f_ghz * 1e9,
        )?,
        SweepSpec::BarrierHeight {
            energy_ev,
            width_nm,
            vb_min_ev,
            vb_max_ev,
            points,
            mass_kg,
        } => {
            let heights: Vec<f64> = linspace(*vb_min_ev, *vb_max_ev, *points)
                .into_iter()
                .map(|v| v * ELECTRON_VOLT)
                .collect();
            sweep_barrier_height(energy_ev * ELECTRON_VOLT, width_nm * 1e-9, &heights, *mass_kg)?
        }
        SweepSpec::Width {
            wire,
            ratio,
            rows_min,
            rows_max,
            f_min_ghz,
            f_max_ghz,
        } => {
            let rows: Vec<u32> = (*rows_min..=*rows_max).collect();
            sweep_width(&wire.to_spec()?, *ratio, &rows, (f_min_ghz * 1e9, f_max_ghz * 1e9))?
        }
        SweepSpec::WidthQm {
            ratio,
            l_over_lambda_max,
            points,
        } => sweep_width_qm(*ratio, &linspace(0.0, *l_over_lambda_max, *points))?,
        SweepSpec::Delta {
            energy_ev,
            area_ev_nm,
            heights_ev,
            mass_kg,
        } => {
            let heights: Vec<f64> = heights_ev.iter().map(|v| v * ELECTRON_VOLT).collect();
            sweep_delta(
                energy_ev * ELECTRON_VOLT,
                area_ev_nm * ELECTRON_VOLT * 1e-9,
                &heights,
                *mass_kg,
            )?
        }
        SweepSpec::Lattice => sweep_table1()?,
        SweepSpec::Mapping {
            wire,
            f_min_ghz,
            f_max_ghz,
            points,
            mapping,
            mode,
        } => sweep_mapping(
            &wire.to_spec()?,
            &linspace(f_min_ghz * 1e9, f_max_ghz * 1e9, *points),
            mapping,
            *mode,
        )?,
    };
    Ok(table.with("spec", serde_json::to_value(spec).unwrap_or(Value::Null)))
}

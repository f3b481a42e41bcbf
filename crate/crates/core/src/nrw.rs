//! Nicolson-Ross-Weir inversion of two-port S-parameters into the impedance,
//! index, permittivity and permeability of a homogeneous slab.
//!
//! `s21` is taken referenced to planes at both slab faces at distance `d`,
//! so it carries the vacuum phase `e^(−ik₀d)`; that phase is removed before
//! inversion.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::cmath::{I, ONE};
use crate::em::SParams;
use crate::units::free_space_wavenumber;

/// Rows with `|s21|` below this are total reflection and carry no index.
pub const MIN_S21: f64 = 1e-12;

/// Negative imaginary phase within this relative size of a lossless row is
/// rounding noise and is set to zero.
const ROUNDING: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NrwError {
    #[error("invalid S-parameter series: {0}")]
    InvalidSeries(String),
    #[error(
        "branch of n is ambiguous at {frequency} Hz: the principal phase is within {tolerance} of π; \
         supply an initial branch"
    )]
    BranchAmbiguity { frequency: f64, tolerance: f64 },
    #[error("no frequency row could be inverted")]
    NoValidRows,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SParamRow {
    pub frequency: f64,
    pub s11: Complex64,
    pub s21: Complex64,
}

impl SParamRow {
    pub fn new(frequency: f64, sp: SParams) -> Self {
        Self {
            frequency,
            s11: sp.s11,
            s21: sp.s21,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SParamSeries {
    pub rows: Vec<SParamRow>,
    /// Slab thickness `d` (m).
    pub thickness: f64,
}

impl SParamSeries {
    pub fn new(rows: Vec<SParamRow>, thickness: f64) -> Result<Self, NrwError> {
        if !(thickness > 0.0) || !thickness.is_finite() {
            return Err(NrwError::InvalidSeries(format!(
                "thickness must be positive, got {thickness}"
            )));
        }
        if rows.is_empty() {
            return Err(NrwError::InvalidSeries("no rows".into()));
        }
        if let Some(r) = rows.iter().find(|r| !(r.frequency > 0.0)) {
            return Err(NrwError::InvalidSeries(format!(
                "non-positive frequency {}",
                r.frequency
            )));
        }
        if let Some(w) = rows.windows(2).find(|w| !(w[1].frequency > w[0].frequency)) {
            return Err(NrwError::InvalidSeries(format!(
                "frequencies not strictly increasing at {} Hz",
                w[1].frequency
            )));
        }
        Ok(Self { rows, thickness })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractOptions {
    /// Branch integer at the first valid row; `None` means 0, with a check
    /// that the choice is not ambiguous.
    pub initial_branch: Option<i64>,
    /// Distance from π of the principal phase below which the first row is
    /// reported as ambiguous.
    pub ambiguity_tolerance: f64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            initial_branch: None,
            ambiguity_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extracted {
    pub frequency: f64,
    pub z: Complex64,
    pub n: Complex64,
    pub eps: Complex64,
    pub mu: Complex64,
    pub branch: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RowOutcome {
    Value(Extracted),
    /// `|s21| ≈ 0` or a singular impedance ratio; left as a gap.
    Indeterminate {
        frequency: f64,
    },
}

impl RowOutcome {
    pub fn value(&self) -> Option<&Extracted> {
        match self {
            RowOutcome::Value(e) => Some(e),
            RowOutcome::Indeterminate { .. } => None,
        }
    }

    pub fn frequency(&self) -> f64 {
        match self {
            RowOutcome::Value(e) => e.frequency,
            RowOutcome::Indeterminate { frequency } => *frequency,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractedParams {
    pub rows: Vec<RowOutcome>,
}

impl ExtractedParams {
    pub fn values(&self) -> impl Iterator<Item = &Extracted> {
        self.rows.iter().filter_map(RowOutcome::value)
    }
}

/// Impedance and principal-branch phase `n·k₀·d` of one row.
struct RowInversion {
    z: Complex64,
    phase: Complex64,
}

fn invert_row(row: &SParamRow, d: f64) -> Option<RowInversion> {
    if row.s21.norm() < MIN_S21 {
        return None;
    }
    let k0d = free_space_wavenumber(row.frequency) * d;
    let s11 = row.s11;
    let s21 = row.s21 * (I * k0d).exp();
    // s11 here is (1 − Z)/(1 + Z) at a single interface, so the ratio is
    // inverted relative to the E-field reflection convention
    let num = (ONE - s11).powi(2) - s21 * s21;
    let den = (ONE + s11).powi(2) - s21 * s21;
    if den.norm() == 0.0 {
        return None;
    }
    let root = (num / den).sqrt();
    let phase_for = |z: Complex64| {
        let gamma = (ONE - z) / (ONE + z);
        -I * (s21 / (ONE - s11 * gamma)).ln()
    };
    let z = if root.re.abs() > 1e-9 * root.norm() {
        if root.re >= 0.0 {
            root
        } else {
            -root
        }
    } else {
        // lossless single-negative: pick the sign that decays inside
        let (p, m) = (phase_for(root), phase_for(-root));
        let z = if p.im >= m.im { root } else { -root };
        Complex64::new(z.re.abs(), z.im)
    };
    let mut phase = phase_for(z);
    if phase.im < 0.0 && phase.im.abs() <= ROUNDING * phase.norm() {
        phase.im = 0.0;
    }
    phase.is_finite().then_some(RowInversion { z, phase })
}

/// Branch integers making `n′ = (φᵢ + 2πmᵢ)/(k₀d)ᵢ` continuous.
///
/// `principal` holds the real principal phase per row (`None` for gaps, which
/// get no branch and do not break continuity).
pub fn branch_select(principal: &[Option<f64>], k0d: &[f64], initial: i64) -> Vec<Option<i64>> {
    let mut prev: Option<f64> = None;
    principal
        .iter()
        .zip(k0d)
        .map(|(phi, &kd)| {
            let phi = (*phi)?;
            let m = match prev {
                None => initial,
                Some(n_prev) => ((n_prev * kd - phi) / (2.0 * PI)).round() as i64,
            };
            prev = Some((phi + 2.0 * PI * m as f64) / kd);
            Some(m)
        })
        .collect()
}

pub fn extract(series: &SParamSeries, opts: &ExtractOptions) -> Result<ExtractedParams, NrwError> {
    let d = series.thickness;
    let inversions: Vec<Option<RowInversion>> = series.rows.iter().map(|r| invert_row(r, d)).collect();
    let first = series
        .rows
        .iter()
        .zip(&inversions)
        .find_map(|(r, inv)| inv.as_ref().map(|inv| (r.frequency, inv.phase.re)))
        .ok_or(NrwError::NoValidRows)?;
    if opts.initial_branch.is_none() && PI - first.1.abs() < opts.ambiguity_tolerance {
        return Err(NrwError::BranchAmbiguity {
            frequency: first.0,
            tolerance: opts.ambiguity_tolerance,
        });
    }
    let k0d: Vec<f64> = series
        .rows
        .iter()
        .map(|r| free_space_wavenumber(r.frequency) * d)
        .collect();
    let principal: Vec<Option<f64>> = inversions.iter().map(|i| i.as_ref().map(|i| i.phase.re)).collect();
    let branches = branch_select(&principal, &k0d, opts.initial_branch.unwrap_or(0));
    let rows = series
        .rows
        .iter()
        .zip(inversions)
        .zip(branches)
        .zip(k0d)
        .map(|(((row, inv), m), kd)| match (inv, m) {
            (Some(inv), Some(m)) => {
                let n = (inv.phase + 2.0 * PI * m as f64) / kd;
                RowOutcome::Value(Extracted {
                    frequency: row.frequency,
                    z: inv.z,
                    n,
                    eps: n / inv.z,
                    mu: n * inv.z,
                    branch: m,
                })
            }
            _ => RowOutcome::Indeterminate {
                frequency: row.frequency,
            },
        })
        .collect();
    Ok(ExtractedParams { rows })
}

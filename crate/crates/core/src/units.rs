//! Physical constants and the handful of unit conversions used at the I/O
//! boundary.
//!
//! Everything inside the library works in SI. Frequencies in GHz, lengths in
//! mm and energies in eV only appear when parsing flags or files, and are
//! converted here.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

/// Planck constant (J·s), exact in CODATA 2018.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Electron rest mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Characteristic impedance of free space (Ω).
///
/// The commonly quoted rounded value is 376.8 Ω; we keep the CODATA figure.
pub const VACUUM_IMPEDANCE: f64 = 376.730_313_668;
/// Electron volt (J), exact in CODATA 2018.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Snapshot of the constants as a value, for callers that prefer to pass
/// them around explicitly (and for the C ABI).
#[derive(Debug, Clone, Copy, PartialEq)]
#[repr(C)]
pub struct PhysicalConstants {
    pub h: f64,
    pub hbar: f64,
    pub c0: f64,
    pub m_e: f64,
    pub z0: f64,
    pub ev: f64,
}

pub const fn constants() -> PhysicalConstants {
    PhysicalConstants {
        h: PLANCK,
        hbar: HBAR,
        c0: SPEED_OF_LIGHT,
        m_e: ELECTRON_MASS,
        z0: VACUUM_IMPEDANCE,
        ev: ELECTRON_VOLT,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Frequency,
    Length,
    Energy,
    Impedance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Hz,
    KHz,
    MHz,
    GHz,
    Meter,
    Millimeter,
    Micrometer,
    Nanometer,
    Joule,
    ElectronVolt,
    Ohm,
    /// Impedance normalized to the vacuum impedance.
    Normalized,
}

impl Unit {
    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Hz | KHz | MHz | GHz => Dimension::Frequency,
            Meter | Millimeter | Micrometer | Nanometer => Dimension::Length,
            Joule | ElectronVolt => Dimension::Energy,
            Ohm | Normalized => Dimension::Impedance,
        }
    }

    /// Size of one of this unit in the SI base unit of its dimension.
    fn scale(self) -> f64 {
        use Unit::*;
        match self {
            Hz => 1.0,
            KHz => 1e3,
            MHz => 1e6,
            GHz => 1e9,
            Meter => 1.0,
            Millimeter => 1e-3,
            Micrometer => 1e-6,
            Nanometer => 1e-9,
            Joule => 1.0,
            ElectronVolt => ELECTRON_VOLT,
            Ohm => 1.0,
            Normalized => VACUUM_IMPEDANCE,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Unit::*;
        let s = match self {
            Hz => "Hz",
            KHz => "kHz",
            MHz => "MHz",
            GHz => "GHz",
            Meter => "m",
            Millimeter => "mm",
            Micrometer => "um",
            Nanometer => "nm",
            Joule => "J",
            ElectronVolt => "eV",
            Ohm => "Ohm",
            Normalized => "Z0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnitError {
    #[error("cannot convert {from} to {to}: incompatible dimensions")]
    IncompatibleUnits { from: Unit, to: Unit },
}

/// Linear conversion between two units of the same dimension.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64, UnitError> {
    if from.dimension() != to.dimension() {
        return Err(UnitError::IncompatibleUnits { from, to });
    }
    if from == to {
        return Ok(value);
    }
    let (sf, st) = (from.scale(), to.scale());
    // Multiply by the larger ratio directly so the common power-of-ten pairs
    // (GHz -> Hz, mm -> m) are a single rounding step.
    Ok(if sf >= st { value * (sf / st) } else { value / (st / sf) })
}

/// Free-space wavenumber 2πf/c0 (1/m).
pub fn free_space_wavenumber(frequency: f64) -> f64 {
    2.0 * PI * frequency / SPEED_OF_LIGHT
}

/// Free-space wavelength c0/f (m).
pub fn free_space_wavelength(frequency: f64) -> f64 {
    SPEED_OF_LIGHT / frequency
}
